#include "cli.hpp"

#include "sv/flatsim.hpp"
#include "sv/notation.hpp"
#include "sv/sv_closed.hpp"
#include "sv/sv_distinct.hpp"
#include "sv/volumes.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace sv::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << "\n";
}

void text_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << r[i];
      if (i + 1 < r.size()) out << std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << "\n";
  }
}

std::string fmt_double(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingVolume:
    case ErrorCode::NotAdmissible:
      return 3;
    case ErrorCode::BadGluing:
    case ErrorCode::SamplingFailure:
    case ErrorCode::ToleranceBreach:
      return 1;
    default:
      return 2;
  }
}

void report_error(std::ostream& err, const std::string& name, const std::string& message) {
  err << json{{"error", name}, {"message", message}}.dump() << "\n";
}

struct Context {
  Format format = Format::Text;
  std::string volumes_path;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  VolumeTable table() const {
    if (volumes_path.empty()) return VolumeTable::bundled();
    std::ifstream in(volumes_path);
    if (!in) throw UsageError("cannot open volume table '" + volumes_path + "'");
    std::vector<std::string> warnings;
    VolumeTable t = load_volume_table(in, &warnings);
    for (const auto& w : warnings) *err << w << "\n";
    return t;
  }
};

StratumComponent component_from(const std::string& stratum, const std::string& label) {
  return make_component(Partition::parse(stratum), parse_label(label));
}

ConstantKind kind_from(const std::string& kind) {
  if (kind == "distinct") return ConstantKind::Distinct;
  if (kind == "closed") return ConstantKind::Closed;
  throw UsageError("--kind must be distinct or closed");
}

std::string volume_text(const StratumVolume& v) {
  return to_string(v.coeff) + " * pi^" + std::to_string(v.pi_power);
}

// ---- verbs ----

void strata_info(const Context& ctx, const std::string& stratum) {
  const Partition alpha = Partition::parse(stratum);
  const Stratum s = Stratum::of(alpha);
  const VolumeTable table = ctx.table();
  const auto labels = classify_components(alpha);

  json comps = json::array();
  std::vector<std::vector<std::string>> rows{{"component", "volume"}};
  auto add = [&](Label label) {
    json entry{{"component", label_tag(label)}};
    std::string vol;
    try {
      StratumVolume v = lookup_volume(make_component(alpha, label), table);
      entry["volume"] = to_string(v.coeff);
      entry["pi_power"] = v.pi_power;
      vol = volume_text(v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MissingVolume) throw;
      entry["volume"] = nullptr;
      vol = "missing";
    }
    comps.push_back(entry);
    rows.push_back({label_tag(label), vol});
  };
  for (Label l : labels) add(l);
  if (labels.size() > 1) add(Label::Connected);

  auto hyp_parity = hyperelliptic_spin_parity(alpha);
  json doc{{"stratum", s.str()},
           {"genus", s.genus},
           {"dim_complex", s.dim_complex()},
           {"dim_real", s.dim_real()},
           {"components", comps}};
  if (hyp_parity) doc["hyperelliptic_spin_parity"] = as_int(*hyp_parity);

  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    csv_line(out, {"stratum", "genus", "dim_complex", "component", "volume", "pi_power"});
    for (const auto& c : comps)
      csv_line(out, {s.str(), std::to_string(s.genus), std::to_string(s.dim_complex()), c["component"],
                     c["volume"].is_null() ? "" : c["volume"].get<std::string>(),
                     c.contains("pi_power") ? std::to_string(c["pi_power"].get<int>()) : ""});
  } else {
    out << s.str() << "  genus " << s.genus << "  complex dimension " << s.dim_complex() << "\n";
    if (hyp_parity) out << "hyperelliptic component has spin parity " << as_int(*hyp_parity) << "\n";
    text_table(out, rows);
  }
}

void enumerate(const Context& ctx, const std::string& stratum, const std::string& kind_text, const std::string& label,
               int m1, int m2) {
  const StratumComponent comp = component_from(stratum, label);
  std::ostream& out = *ctx.out;
  json rows = json::array();
  std::vector<std::vector<std::string>> text{{"pattern", "p", "gamma_minus", "gamma"}};

  if (kind_from(kind_text) == ConstantKind::Distinct) {
    std::vector<std::pair<int, int>> pairs;
    if (m1 >= 0 && m2 >= 0) {
      pairs.push_back({std::min(m1, m2), std::max(m1, m2)});
    } else {
      const Partition& a = comp.stratum.alpha;
      for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j) {
          std::pair<int, int> pr{std::min(a[i], a[j]), std::max(a[i], a[j])};
          if (std::find(pairs.begin(), pairs.end(), pr) == pairs.end()) pairs.push_back(pr);
        }
    }
    for (auto [x, y] : pairs)
      for (const auto& cfg : enumerate_distinct(comp.stratum, x, y)) {
        SymmetryInfo sym = symmetry_distinct(cfg);
        std::string pat = format_distinct(cfg);
        rows.push_back({{"pattern", pat}, {"m1", cfg.m1}, {"m2", cfg.m2}, {"p", cfg.p()},
                        {"gamma_minus", sym.gamma_minus}, {"gamma", sym.gamma}});
        text.push_back({pat, std::to_string(cfg.p()), std::to_string(sym.gamma_minus), std::to_string(sym.gamma)});
      }
  } else {
    const VolumeTable table = ctx.table();
    text[0].insert(text[0].begin() + 2, "q");
    for (const auto& cfg : enumerate_closed(comp, table)) {
      SymmetryInfo sym = symmetry_closed(cfg);
      std::string pat = format_closed(cfg);
      rows.push_back({{"pattern", pat}, {"p", cfg.p()}, {"q", cfg.q()}, {"gamma_minus", sym.gamma_minus},
                      {"gamma", sym.gamma}});
      text.push_back({pat, std::to_string(cfg.p()), std::to_string(cfg.q()), std::to_string(sym.gamma_minus),
                      std::to_string(sym.gamma)});
    }
  }

  if (ctx.format == Format::Json) {
    out << json{{"stratum", comp.str()}, {"kind", kind_text}, {"configurations", rows}}.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    for (const auto& r : text) csv_line(out, r);
  } else {
    text_table(out, text);
  }
}

json constant_json(const SVConstant& c) {
  json j{{"value", c.str()},
         {"exact", to_string(c.reported())},
         {"kind", c.kind == ConstantKind::Closed ? "closed" : "distinct"},
         {"pi_power", c.pi_power},
         {"approx", c.approx()}};
  if (c.kind == ConstantKind::Closed) j["approx_c"] = c.approx() * 6 / (std::numbers::pi * std::numbers::pi);
  return j;
}

void constant(const Context& ctx, const std::string& stratum, const std::string& label, std::string kind_text,
              const std::string& pattern) {
  const StratumComponent comp = component_from(stratum, label);
  if (kind_text.empty()) {
    std::size_t first = pattern.find_first_not_of(" \t");
    kind_text = first != std::string::npos && (pattern[first] == '-' || pattern[first] == '=') ? "closed" : "distinct";
  }
  const VolumeTable table = ctx.table();
  SVConstant c;
  std::string canonical;
  if (kind_from(kind_text) == ConstantKind::Distinct) {
    DistinctConfig cfg = parse_distinct(pattern);
    canonical = print_distinct(cfg);
    c = constant_general(cfg, comp, table);
  } else {
    ClosedConfig cfg = parse_closed(pattern);
    canonical = print_closed(cfg);
    c = constant_closed(cfg, comp, table);
  }
  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Json) {
    json j = constant_json(c);
    j["stratum"] = comp.str();
    j["pattern"] = canonical;
    out << j.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    csv_line(out, {"stratum", "pattern", "value", "approx"});
    csv_line(out, {comp.str(), canonical, c.str(), fmt_double(c.approx(), 12)});
  } else {
    out << c.str() << "\n";
  }
}

void table(const Context& ctx, const std::string& stratum, const std::string& label, const std::string& kind_text) {
  const StratumComponent comp = component_from(stratum, label);
  const VolumeTable vt = ctx.table();
  const bool closed = kind_from(kind_text) == ConstantKind::Closed;
  json rows = json::array();
  std::vector<std::vector<std::string>> text{{"pattern", "gamma_minus", "gamma", "M", closed ? "c*zeta2" : "c"}};
  auto add = [&](const std::string& pat, SymmetryInfo sym, const Rational& m, const SVConstant& c) {
    json r = constant_json(c);
    r["pattern"] = pat;
    r["gamma_minus"] = sym.gamma_minus;
    r["gamma"] = sym.gamma;
    r["M"] = to_string(m);
    rows.push_back(r);
    text.push_back({pat, std::to_string(sym.gamma_minus), std::to_string(sym.gamma), to_string(m),
                    to_string(c.reported())});
  };
  if (closed) {
    for (const auto& row : table_closed(comp, vt)) add(format_closed(row.config), row.symmetry, row.m, row.constant);
  } else {
    for (const auto& row : table_distinct(comp, vt))
      add(format_distinct(row.config), row.symmetry, row.m, row.constant);
  }
  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Json) {
    out << json{{"stratum", comp.str()}, {"kind", kind_text}, {"rows", rows}}.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    for (const auto& r : text) csv_line(out, r);
  } else {
    text_table(out, text);
  }
}

void volumes(const Context& ctx, const std::string& file) {
  Context c = ctx;
  if (!file.empty()) c.volumes_path = file;
  const VolumeTable t = c.table();
  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Text) {
    t.write(out);
    return;
  }
  json rows = json::array();
  if (ctx.format == Format::Csv) csv_line(out, {"partition", "component", "coefficient", "pi_power"});
  for (const auto& [key, coeff] : t.entries()) {
    const int power = 2 * genus_of(key.first);
    if (ctx.format == Format::Csv)
      csv_line(out, {key.first.str(), label_tag(key.second), to_string(coeff), std::to_string(power)});
    else
      rows.push_back({{"partition", key.first.str()}, {"component", label_tag(key.second)},
                      {"coefficient", to_string(coeff)}, {"pi_power", power}});
  }
  if (ctx.format == Format::Json) out << json{{"volumes", rows}}.dump(2) << "\n";
}

flat::IrreduciblePermutation permutation_from(const std::string& stratum, const std::string& perm_text) {
  if (!perm_text.empty()) {
    flat::IrreduciblePermutation p;
    std::istringstream in(perm_text);
    std::string tok;
    while (in >> tok) {
      try {
        p.pi.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad permutation entry '" + tok + "'");
      }
    }
    flat::check_irreducible(p);
    return p;
  }
  if (stratum.empty()) throw UsageError("simulate needs --stratum or --perm");
  return flat::permutation_for(Partition::parse(stratum));
}

void simulate(const Context& ctx, const std::string& stratum, const std::string& perm_text,
              const std::string& cls_text, double L, int trials, std::uint64_t seed, int threads) {
  const auto perm = permutation_from(stratum, perm_text);
  const Stratum s = flat::stratum_of_permutation(perm);
  if (!stratum.empty() && s.alpha != Partition::parse(stratum))
    throw UsageError("permutation realizes " + s.str() + ", not H(" + stratum + ")");
  const auto cls = flat::parse_class(cls_text);
  if (!(L > 0)) throw UsageError("--L must be positive");
  if (trials < 1) throw UsageError("--trials must be at least 1");
  const auto res = flat::empirical_constant(perm, cls, L, trials, seed, threads);

  json doc{{"L", L},
           {"trials", trials},
           {"class", flat::class_name(cls)},
           {"mean", res.mean},
           {"stderr", res.stderr_},
           {"counts", res.counts},
           {"estimates", res.estimates},
           {"stratum", s.str()},
           {"permutation", perm.str()},
           {"seed", seed},
           {"resamples", res.resamples}};
  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    csv_line(out, {"trial", "count", "estimate"});
    for (int k = 0; k < trials; ++k)
      csv_line(out, {std::to_string(k), std::to_string(res.counts[k]), fmt_double(res.estimates[k], 10)});
  } else {
    out << s.str() << "  permutation " << perm.str() << "\n";
    out << "class " << flat::class_name(cls) << "  L " << L << "  trials " << trials << "  seed " << seed << "\n";
    out << "mean " << fmt_double(res.mean, 8) << "  stderr " << fmt_double(res.stderr_, 4) << "\n";
    out << "counts";
    for (long c : res.counts) out << " " << c;
    out << "\n";
  }
}

flat::PolygonSpec polygons_from(const std::string& fixture, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open polygon file '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return flat::parse_polygon_json(buf.str());
  }
  if (fixture == "octagon") return flat::regular_octagon();
  if (fixture == "four-square") return flat::four_square_surface();
  if (fixture == "torus") return flat::square_torus();
  throw UsageError("--fixture must be octagon, four-square or torus");
}

void count(const Context& ctx, const std::string& fixture, const std::string& file, double L, bool list) {
  if (!(L > 0)) throw UsageError("--L must be positive");
  const auto surface = flat::build_from_polygons(polygons_from(fixture, file));
  const auto rep = flat::count_up_to(surface, L);
  const auto scs = flat::saddle_connections_up_to(surface, L);
  const auto cyls = flat::cylinders_up_to(surface, L);

  json counts = json::object(), estimates = json::object();
  for (const auto& [k, v] : rep.counts) {
    counts[k] = v;
    estimates[k] = rep.estimate(flat::parse_class(k));
  }
  json cyl_list = json::array();
  for (const auto& c : cyls) cyl_list.push_back({{"holonomy", {c.holonomy.x, c.holonomy.y}}, {"height", c.height}});
  json mult = json::object();
  for (auto [size, n] : flat::multiplicity_histogram(scs)) mult[std::to_string(size)] = n;
  json doc{{"L", L},
           {"stratum", Stratum::of(surface.stratum()).str()},
           {"area", surface.area},
           {"counts", counts},
           {"estimates", estimates},
           {"multiplicities", mult}};
  if (list) {
    json sc_list = json::array();
    for (const auto& r : scs)
      sc_list.push_back({{"holonomy", {r.holonomy.x, r.holonomy.y}}, {"from", r.from_zero}, {"to", r.to_zero},
                         {"closed", r.is_closed}});
    doc["saddle_connections"] = sc_list;
    doc["cylinders"] = cyl_list;
  }

  std::ostream& out = *ctx.out;
  if (ctx.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else if (ctx.format == Format::Csv) {
    csv_line(out, {"class", "count", "estimate"});
    for (const auto& [k, v] : rep.counts)
      csv_line(out, {k, std::to_string(v), fmt_double(rep.estimate(flat::parse_class(k)), 10)});
  } else {
    out << doc["stratum"].get<std::string>() << "  area " << fmt_double(surface.area) << "  L " << L << "\n";
    for (const auto& [k, v] : rep.counts)
      out << k << " " << v << "  estimate " << fmt_double(rep.estimate(flat::parse_class(k))) << "\n";
    if (list) {
      for (const auto& r : scs)
        out << "sc " << r.from_zero << "->" << r.to_zero << " (" << fmt_double(r.holonomy.x, 10) << ", "
            << fmt_double(r.holonomy.y, 10) << ")\n";
      for (const auto& c : cyls)
        out << "cylinder (" << fmt_double(c.holonomy.x, 10) << ", " << fmt_double(c.holonomy.y, 10) << ") height "
            << fmt_double(c.height, 10) << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel-Veech constants of strata of abelian differentials, with a flat-surface simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  if (const char* env = std::getenv(kVolumesEnv)) ctx.volumes_path = env;
  app.add_option("--volumes", ctx.volumes_path,
                 std::string("Volume table merged over the bundled one (default: $") + kVolumesEnv + ")");

  std::string stratum, label = "c", kind, pattern, file, cls = "all", perm, fixture;
  int m1 = -1, m2 = -1, trials = 20, threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  double L = 0;
  std::uint64_t seed = 1;
  bool list = false;

  auto* strata = app.add_subcommand("strata", "Stratum information");
  strata->require_subcommand(1);
  strata->fallthrough();
  auto* info = strata->add_subcommand("info", "Genus, dimension, components and volumes");
  info->add_option("--stratum", stratum, "Zero orders, e.g. 4,2")->required();

  auto* en = app.add_subcommand("enumerate", "List configurations");
  en->add_option("--stratum", stratum)->required();
  en->add_option("--kind", kind)->required()->check(CLI::IsMember({"distinct", "closed"}));
  en->add_option("--m1", m1);
  en->add_option("--m2", m2);
  en->add_option("--component", label);

  auto* co = app.add_subcommand("constant", "Constant of one configuration");
  co->add_option("--stratum", stratum)->required();
  co->add_option("--pattern", pattern)->required();
  co->add_option("--kind", kind)->check(CLI::IsMember({"distinct", "closed"}));
  co->add_option("--component", label);

  auto* ta = app.add_subcommand("table", "All configurations with their constants");
  ta->add_option("--stratum", stratum)->required();
  ta->add_option("--kind", kind)->required()->check(CLI::IsMember({"distinct", "closed"}));
  ta->add_option("--component", label);

  auto* vo = app.add_subcommand("volumes", "Print the volume table");
  vo->add_option("--file", file, "Entries merged over the bundled table");

  auto* si = app.add_subcommand("simulate", "Empirical counting on sampled surfaces");
  si->add_option("--stratum", stratum);
  si->add_option("--perm", perm, "Permutation as space separated bottom positions");
  si->add_option("--class", cls)->check(CLI::IsMember({"between", "closed", "cylinders", "all"}));
  si->add_option("--L", L)->required();
  si->add_option("--trials", trials);
  si->add_option("--seed", seed);
  si->add_option("--threads", threads);

  auto* cn = app.add_subcommand("count", "Counts on a fixed polygon surface");
  auto* fx = cn->add_option("--fixture", fixture)->check(CLI::IsMember({"octagon", "four-square", "torus"}));
  auto* pf = cn->add_option("--polygons", file, "Polygon JSON file");
  fx->excludes(pf);
  cn->add_option("--L", L)->required();
  cn->add_flag("--list", list, "List connections and cylinders");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    report_error(err, "UsageError", e.what());
    return 2;
  }
  ctx.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  try {
    if (*info) strata_info(ctx, stratum);
    else if (*en) enumerate(ctx, stratum, kind, label, m1, m2);
    else if (*co) constant(ctx, stratum, label, kind, pattern);
    else if (*ta) table(ctx, stratum, label, kind);
    else if (*vo) volumes(ctx, file);
    else if (*si) simulate(ctx, stratum, perm, cls, L, trials, seed, threads);
    else if (*cn) {
      if (fixture.empty() && file.empty()) throw UsageError("count needs --fixture or --polygons");
      count(ctx, fixture, file, L, list);
    }
  } catch (const UsageError& e) {
    report_error(err, "UsageError", e.what());
    return 2;
  } catch (const Error& e) {
    report_error(err, error_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 1;
  }
  return 0;
}

}  // namespace sv::cli
