#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "eqalg/burnside.hpp"
#include "eqalg/classify.hpp"
#include "eqalg/mackey.hpp"
#include "eqalg/tambara.hpp"

using namespace eqalg;
using nlohmann::json;

namespace {

GSet parse_generator(const GroupPtr& g, const std::string& spec) {
  // comma-separated subgroup ids; each contributes the orbit G/S_id
  std::vector<GSet> parts;
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    int id = std::stoi(tok);
    if (id < 0 || id >= g->lattice.num_subgroups()) throw CLI::ValidationError("--gen: unknown subgroup id " + tok);
    parts.push_back(make_orbit(g, id));
  }
  if (parts.empty()) return empty_gset(g);
  return disjoint_union(parts);
}

TransferSystem parse_system(const GroupPtr& g, const std::string& spec) {
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) return system_from_json(g, spec);
  auto systems = enumerate_systems(g);
  int idx = std::stoi(spec);
  if (idx < 0 || idx >= static_cast<int>(systems.size()))
    throw CLI::ValidationError("--system: index out of range (0.." + std::to_string(systems.size() - 1) + ")");
  return systems[idx];
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json triple_to_json(const FiniteGroup& g, const SpanTriple& t) {
  auto labels = subgroup_labels(g);
  return json{{"stabilizer", labels[t.j]}, {"x", t.x}, {"y", t.y}};
}

json class_to_json(const FiniteGroup& g, const PolyClass& c) {
  auto labels = subgroup_labels(g);
  json pairs = json::array();
  for (auto [l, w] : c.pairs) pairs.push_back({{"stabilizer", labels[l]}, {"image", w}});
  return json{{"middle", labels[c.j]}, {"y", c.y}, {"exponent_size", c.exponent_size}, {"orbits", pairs}};
}

int run_groups(const std::string& spec, const std::string& format) {
  auto g = build_group(spec);
  if (format == "json") {
    json j;
    j["name"] = g->name;
    j["order"] = g->order;
    j["mul"] = g->mul_table();
    j["depth"] = g->lattice.depth;
    j["solvable"] = is_solvable(*g);
    auto labels = subgroup_labels(*g);
    json subs = json::array();
    for (const auto& s : g->lattice.subgroups)
      subs.push_back({{"id", s.id},
                      {"label", labels[s.id]},
                      {"order", s.order},
                      {"elements", s.elements},
                      {"normal", static_cast<bool>(g->lattice.normal[s.id])},
                      {"class", g->lattice.conj_class[s.id]},
                      {"weyl_order", g->lattice.weyl_order[s.id]}});
    j["subgroups"] = subs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << group_to_text(*g);
    auto labels = subgroup_labels(*g);
    std::cout << "subgroups:";
    for (const auto& s : g->lattice.subgroups) std::cout << ' ' << labels[s.id];
    std::cout << "\ndepth: " << g->lattice.depth << "\n";
  }
  return 0;
}

int run_verify(const std::string& spec, unsigned seed, int max_size) {
  auto g = build_group(spec);
  bool ok = true;
  auto report = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << "\n";
    ok &= pass;
  };
  report("localization identities", localization_checks(g).all());
  for (int p : {2, 3, 5}) report("constant-functor resolutions p=" + std::to_string(p), verify_cp_resolutions(p).all());
  {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> val(-4, 4);
    const auto& lat = g->lattice;
    bool frob = true;
    for (int trial = 0; trial < 50; ++trial) {
      int h = static_cast<int>(rng() % lat.num_subgroups());
      std::vector<int> below;
      for (int k = 0; k < lat.num_subgroups(); ++k)
        if (lat.leq[k][h]) below.push_back(k);
      int k = below[rng() % below.size()];
      auto a = burnside_zero(g, k);
      auto b = burnside_zero(g, h);
      for (auto& c : a.coeffs) c = val(rng);
      for (auto& c : b.coeffs) c = val(rng);
      frob &= multiply(burnside_tr(a, h), b) == burnside_tr(multiply(a, burnside_res(b, k)), h);
    }
    report("frobenius reciprocity (50 samples)", frob);
  }
  {
    auto systems = enumerate_systems(g);
    bool under = true;
    std::vector<TransferSystem> chosen;
    if (systems.size() <= 20)
      chosen = systems;
    else
      chosen = {trivial_system(g), complete_system(g)};
    for (const auto& o : chosen)
      for (int h = 0; h < g->lattice.num_subgroups(); ++h) under &= underlying_ring_check(o, h, 2).ok();
    report("underlying polynomial level", under);
  }
  {
    bool gfp = true;
    const auto& lat = g->lattice;
    for (int n = 0; n < lat.num_subgroups(); ++n) {
      if (!lat.normal[n]) continue;
      for (const auto& t : {point_gset(g), disjoint_union({point_gset(g), make_orbit(g, 0)})})
        gfp &= gfp_free(g, t, n).bijection;
      for (const auto& o : {trivial_system(g), o_gen(g, n)}) {
        auto res = gfp_free_tambara(g, o, point_gset(g), n, std::min(max_size, 2 * g->order));
        gfp &= res.type_bijection && res.class_bijection;
      }
    }
    report("geometric fixed points of frees", gfp);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in equivariant algebra over finite groups"};
  app.require_subcommand(1);
  
  unsigned seed = 20240801;
  int max_size = -1;
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--max-size", max_size, "bound on exponent-set size (default 3|G|)");

  std::string group_spec, format, gen_spec, system_spec;
  int level = -1, subgroup = -1;
  bool with_maps = false;

  auto* groups = app.add_subcommand("groups", "construct a group and print its record");
  groups->fallthrough();
  groups->add_option("--group", group_spec, "group descriptor")->required();
  groups->add_option("--format", format, "text|json")->default_val("text");

  auto* burn = app.add_subcommand("burnside", "Burnside ring data");
  burn->fallthrough();
  burn->require_subcommand(1);
  auto* marks = burn->add_subcommand("marks", "table of marks");
  marks->fallthrough();
  marks->add_option("--group", group_spec)->required();
  marks->add_option("--level", level, "subgroup id (default: the whole group)");
  marks->add_option("--format", format, "csv|txt")->default_val("txt");

  auto* ts = app.add_subcommand("transfer-systems", "transfer system operations");
  ts->fallthrough();
  ts->require_subcommand(1);
  auto* ts_enum = ts->add_subcommand("enumerate", "list all transfer systems");
  ts_enum->fallthrough();
  ts_enum->add_option("--group", group_spec)->required();
  ts_enum->add_option("--format", format, "json|csv|dot")->default_val("json");

  auto* fm = app.add_subcommand("free-mackey", "levels of a free Mackey functor");
  fm->fallthrough();
  fm->add_option("--group", group_spec)->required();
  fm->add_option("--gen", gen_spec, "generator: comma-separated subgroup ids, one orbit each")->required();
  fm->add_option("--level", level, "only this level");
  fm->add_flag("--maps", with_maps, "include restriction/transfer matrices");

  auto* ft = app.add_subcommand("free-tambara", "graded basis of a free incomplete Tambara functor");
  ft->fallthrough();
  ft->add_option("--group", group_spec)->required();
  ft->add_option("--system", system_spec, "transfer system: enumeration index or JSON")->required();
  ft->add_option("--gen", subgroup, "generator level subgroup id")->required();
  ft->add_option("--level", level, "level subgroup id")->required();

  auto* cl = app.add_subcommand("classify", "freeness/flatness verdict for a pair");
  cl->fallthrough();
  cl->add_option("--group", group_spec)->required();
  cl->add_option("--system", system_spec)->required();
  cl->add_option("--subgroup", subgroup)->required();

  auto* tables = app.add_subcommand("tables", "reference tables");
  tables->fallthrough();
  tables->require_subcommand(1);
  auto* tables_app = tables->add_subcommand("appendix", "underlying-Mackey-functor table");
  tables_app->fallthrough();
  tables_app->add_option("--group", group_spec)->required();
  tables_app->add_option("--format", format, "md|csv|txt")->default_val("txt");

  auto* st = app.add_subcommand("stats", "transfer-system statistics");
  st->fallthrough();
  st->add_option("--group", group_spec)->required();

  auto* vf = app.add_subcommand("verify", "run the full identity suite");
  vf->fallthrough();
  vf->add_option("--group", group_spec)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (groups->parsed()) return run_groups(group_spec, format);

    if (marks->parsed()) {
      auto g = build_group(group_spec);
      int h = level < 0 ? g->lattice.top_id : level;
      std::cout << marks_to_text(g, h, format == "csv");
      return 0;
    }

    if (ts_enum->parsed()) {
      auto g = build_group(group_spec);
      auto systems = enumerate_systems(g);
      if (format == "json") {
        json out = json::array();
        for (const auto& s : systems) out.push_back(json::parse(system_to_json(s)));
        std::cout << out.dump(2) << "\n";
      } else if (format == "csv") {
        auto labels = subgroup_labels(*g);
        std::cout << "index,pairs\n";
        for (size_t i = 0; i < systems.size(); ++i) {
          std::cout << i << ",\"";
          bool first = true;
          for (auto [k, h] : systems[i].strict_pairs()) {
            if (!first) std::cout << ';';
            std::cout << labels[k] << '<' << labels[h];
            first = false;
          }
          std::cout << "\"\n";
        }
      } else {
        auto labels = subgroup_labels(*g);
        for (size_t i = 0; i < systems.size(); ++i) {
          std::cout << "digraph system_" << i << " {\n";
          for (const auto& s : g->lattice.subgroups) std::cout << "  \"" << labels[s.id] << "\";\n";
          for (auto [k, h] : systems[i].strict_pairs())
            std::cout << "  \"" << labels[k] << "\" -> \"" << labels[h] << "\";\n";
          std::cout << "}\n";
        }
      }
      return 0;
    }

    if (fm->parsed()) {
      auto g = build_group(group_spec);
      auto t = parse_generator(g, gen_spec);
      json out;
      out["group"] = g->name;
      out["generator_size"] = t.size;
      auto labels = subgroup_labels(*g);
      json levels = json::array();
      std::vector<SpanBasis> bases;
      for (int k = 0; k < g->lattice.num_subgroups(); ++k) bases.push_back(span_basis(g, t, k));
      for (int k = 0; k < g->lattice.num_subgroups(); ++k) {
        if (level >= 0 && k != level) continue;
        json lvl;
        lvl["level"] = labels[k];
        lvl["rank"] = bases[k].rank();
        json basis = json::array();
        for (const auto& tr : bases[k].basis) basis.push_back(triple_to_json(*g, tr));
        lvl["basis"] = basis;
        levels.push_back(std::move(lvl));
      }
      out["levels"] = levels;
      if (with_maps) {
        json maps = json::array();
        for (int k = 0; k < g->lattice.num_subgroups(); ++k)
          for (int h = 0; h < g->lattice.num_subgroups(); ++h) {
            if (k == h || !g->lattice.leq[k][h]) continue;
            maps.push_back({{"from", labels[k]},
                            {"to", labels[h]},
                            {"tr", matrix_to_json(span_tr(bases[k], bases[h]))},
                            {"res", matrix_to_json(span_res(bases[h], bases[k]))}});
          }
        out["maps"] = maps;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (ft->parsed()) {
      auto g = build_group(group_spec);
      auto o = parse_system(g, system_spec);
      int bound = max_size < 0 ? 3 * g->order : max_size;
      auto src = make_orbit(g, subgroup);
      auto basis = poly_basis(o, src, level, bound);
      auto labels = subgroup_labels(*g);
      json out;
      out["group"] = g->name;
      out["generator"] = labels[subgroup];
      out["level"] = labels[level];
      out["max_size"] = bound;
      json arr = json::array();
      for (const auto& c : basis) arr.push_back(class_to_json(*g, c));
      out["basis"] = arr;
      out["rank"] = basis.size();
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (cl->parsed()) {
      auto g = build_group(group_spec);
      auto o = parse_system(g, system_spec);
      auto v = classify_pair(o, subgroup);
      json out;
      out["status"] =
          v.status == VerdictStatus::Free ? "Free" : (v.status == VerdictStatus::NotFlat ? "NotFlat" : "Unknown");
      out["reasons"] = {{"restriction-trivial", v.restriction_trivial},
                        {"H-normal", v.h_normal},
                        {"G/H-admissible", v.gh_admissible},
                        {"quotient-solvable", v.quotient_solvable}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (tables_app->parsed()) {
      auto g = build_group(group_spec);
      std::cout << render_appendix(appendix_table(g), format);
      return 0;
    }

    if (st->parsed()) {
      auto stats = group_stats(build_group(group_spec));
      json out{{"n", stats.n}, {"T", stats.t},           {"P", stats.p},
               {"d", stats.d}, {"solvable", stats.solvable}, {"depth_bound_holds", stats.depth_bound_holds}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (vf->parsed()) {
      auto g = build_group(group_spec);
      return run_verify(group_spec, seed, max_size < 0 ? 2 * g->order : max_size);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
