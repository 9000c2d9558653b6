#include "toporna/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <omp.h>
#include <ostream>
#include <sstream>

#include "toporna/asymptotics.hpp"
#include "toporna/genfun.hpp"
#include "toporna/recursions.hpp"
#include "toporna/sampler.hpp"

namespace toporna {

namespace {

using nlohmann::json;

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "plain";
  unsigned precision = 20;
  int threads = 0;
  std::uint64_t seed = 0;
  int ceiling = 18;
};

struct Options {
  int n = 0;
  int g = 0;
  int lambda = 1;
  int r = 1;
  int order = 20;
  std::optional<int> arcs;
  bool oracle = false;
  std::string kind;
  std::string mark;
  bool table3 = false;
  bool derive = false;
  bool fd = false;
  std::string type = "H";
  long count = 10;
  std::string method = "grammar";
  std::optional<int> genus_filter;
  std::vector<std::string> structures;
  std::string file;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::optional<json> detail;  // extra structured output, JSON only
  bool lines_only = false;     // plain output is the first column, one per line
};

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return v.get_str(); }
std::string str(long v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

std::string real_str(const Real& v, unsigned digits) { return v.str(static_cast<std::streamsize>(digits)); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Report& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc;
    doc["command"] = rep.command;
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    doc["params"] = params;
    doc["columns"] = rep.columns;
    json rows = json::array();
    for (const auto& row : rep.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[rep.columns[i]] = row[i];
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    if (rep.detail) doc["detail"] = *rep.detail;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    // parameters lead every row so a CSV file is self-describing
    std::vector<std::string> header;
    for (const auto& kv : rep.params) header.push_back(kv.first);
    header.insert(header.end(), rep.columns.begin(), rep.columns.end());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_field(header[i]);
    out << "\n";
    for (const auto& row : rep.rows) {
      bool first = true;
      for (const auto& kv : rep.params) {
        out << (first ? "" : ",") << csv_field(kv.second);
        first = false;
      }
      for (const auto& cell : row) {
        out << (first ? "" : ",") << csv_field(cell);
        first = false;
      }
      out << "\n";
    }
  } else {
    out << "# " << rep.command;
    for (const auto& [k, v] : rep.params) out << " " << k << "=" << v;
    out << "\n";
    if (rep.lines_only) {
      for (const auto& row : rep.rows) out << row.front() << "\n";
      return;
    }
    for (std::size_t i = 0; i < rep.columns.size(); ++i) out << (i ? "\t" : "") << rep.columns[i];
    out << "\n";
    for (const auto& row : rep.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << "\n";
    }
  }
}

GFParams gf_params(const Options& o, std::size_t order) {
  GFParams p;
  p.lambda = o.lambda;
  p.r = o.r;
  p.g = o.g;
  p.order = order;
  check_params(p);
  return p;
}

std::vector<std::pair<std::string, std::string>> base_params(const Options& o) {
  return {{"genus", str(o.g)}, {"lambda", str(o.lambda)}, {"r", str(o.r)}};
}

std::optional<PkKind> pk_from_string(const std::string& s) {
  if (s == "H") return PkKind::H;
  if (s == "K") return PkKind::K;
  if (s == "L") return PkKind::L;
  if (s == "M") return PkKind::M;
  return std::nullopt;
}

std::vector<Diagram> read_structures(const Options& o) {
  std::vector<std::string> texts = o.structures;
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw std::invalid_argument("cannot open " + o.file);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) texts.push_back(line);
    }
  }
  if (texts.empty()) throw std::invalid_argument("no structure given");
  std::vector<Diagram> out;
  for (const auto& t : texts) out.push_back(parse_structure(t));
  return out;
}

std::string arcs_text(const std::vector<Arc>& arcs) {
  std::string s;
  for (const auto& a : arcs) s += (s.empty() ? "" : " ") + ("(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")");
  return s;
}

template <class T>
std::string list_text(const std::vector<T>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

Report cmd_count(const Options& o, const Global& gl) {
  const GFParams p = gf_params(o, static_cast<std::size_t>(o.n) + 1);
  Report rep{"count", base_params(o), {"n", "arcs", "count"}, {}, {}, false};
  Integer value;
  if (o.arcs) {
    const auto by_arcs = arc_counts(p, o.n);
    value = *o.arcs >= 0 && static_cast<std::size_t>(*o.arcs) < by_arcs.size() ? by_arcs[*o.arcs] : Integer(0);
  } else {
    value = Integer(structures_series(p).value()[static_cast<std::size_t>(o.n)]);
  }
  std::vector<std::string> row{str(o.n), o.arcs ? str(*o.arcs) : "all", str(value)};
  if (o.oracle) {
    EnumFilter f;
    f.lambda = o.lambda;
    f.r = o.r;
    f.genus_set = std::set<int>{o.g};
    if (o.arcs) f.arc_range = std::make_pair(*o.arcs, *o.arcs);
    long hits = 0;
    enumerate_diagrams(o.n, f, [&](const Diagram&) { ++hits; }, gl.ceiling);
    rep.columns.push_back("oracle");
    row.push_back(str(hits));
    if (Integer(hits) != value) throw InternalError("series and oracle disagree: " + str(value) + " vs " + str(hits));
  }
  rep.params.emplace_back("ceiling", str(gl.ceiling));
  rep.rows.push_back(row);
  return rep;
}

Report cmd_series(const Options& o) {
  if (o.order < 1) throw std::invalid_argument("order must be positive");
  const auto order = static_cast<std::size_t>(o.order);
  Report rep{"series", base_params(o), {"n", "coefficient"}, {}, {}, false};
  rep.params.insert(rep.params.begin(), {"kind", o.kind});
  rep.params.emplace_back("order", str(o.order));
  rep.params.emplace_back("mark", o.mark.empty() ? "none" : o.mark);
  std::optional<YJet> jet;
  TruncatedSeries plain;
  if (o.kind == "cg") {
    if (!o.mark.empty()) throw std::invalid_argument("cg has no marked form");
    plain = cg_by_recursion(o.g, order);
  } else if (o.kind == "d0" || o.kind == "dg") {
    GFParams p = gf_params(o, order);
    if (o.kind == "d0") p.g = 0;
    if (o.kind == "dg" && o.g < 1) throw std::invalid_argument("dg needs genus >= 1");
    const auto pk = pk_from_string(o.mark);
    if (o.mark.empty()) {
      plain = structures_series(p).value();
    } else if (pk) {
      if (p.g == 0) throw std::invalid_argument("pseudoknot marks need genus >= 1");
      jet = pk_marked_dg(*pk, p);
    } else {
      const LoopKind kind = loop_kind_from_string(o.mark);
      if (p.g == 0) jet = loop_marked_d0(kind, p.lambda, p.r, order);
      else jet = o.table3 ? loop_marked_dg(kind, p) : loop_marked_dg_exact(kind, p);
      rep.params.emplace_back("multi_rule", o.table3 ? "table3" : "exact");
    }
  } else {
    throw std::invalid_argument("unknown series kind '" + o.kind + "' (d0, dg or cg)");
  }
  if (jet) {
    rep.columns = {"n", "coefficient", "d1", "d2"};
    for (std::size_t n = 0; n < order; ++n)
      rep.rows.push_back({str(static_cast<long>(n)), str(jet->value()[n]), str(jet->d1()[n]), str(jet->d2()[n])});
  } else {
    for (std::size_t n = 0; n < order; ++n) rep.rows.push_back({str(static_cast<long>(n)), str(plain[n])});
  }
  return rep;
}

void poly_rows(Report& rep, const Polynomial& p) {
  rep.columns = {"arcs", "count"};
  for (int k = 0; k <= p.degree(); ++k)
    if (p[static_cast<std::size_t>(k)] != 0) rep.rows.push_back({str(k), str(p[static_cast<std::size_t>(k)])});
}

void bipoly_rows(Report& rep, const BiPoly& p) {
  rep.columns = {"arcs", "marks", "count"};
  for (const auto& [e, c] : p.terms())
    rep.rows.push_back({str(static_cast<long>(e.first)), str(static_cast<long>(e.second)), str(c)});
}

Report cmd_shapes(const Options& o, bool irreducible) {
  if (o.g < 1) throw std::invalid_argument("genus must be at least 1");
  Report rep{irreducible ? "irreducibles" : "shapes", {{"genus", str(o.g)}, {"mark", o.mark.empty() ? "none" : o.mark}},
             {}, {}, {}, false};
  IrreducibleSource src;
  src.derive_from_shapes = o.derive;
  const auto pk = pk_from_string(o.mark);
  if (o.mark.empty()) {
    poly_rows(rep, irreducible ? irreducible_poly(o.g, src) : shape_poly(o.g));
  } else if (pk) {
    bipoly_rows(rep, irreducible ? marked_irreducible_poly(o.g, *pk, src) : marked_shape_poly(o.g, *pk, src));
  } else if (!irreducible && o.mark == "multi") {
    bipoly_rows(rep, shape_multi_poly(o.g, 6 * o.g - 1));
  } else {
    throw std::invalid_argument("unknown mark '" + o.mark + "'");
  }
  return rep;
}

Report cmd_genus(const Options& o) {
  Report rep{"genus", {}, {"structure", "genus", "boundaries"}, {}, {}, false};
  for (const auto& d : read_structures(o)) {
    const auto res = genus(d);
    rep.rows.push_back({emit_structure(d), str(res.genus), str(res.boundary_count)});
  }
  return rep;
}

Report cmd_classify(const Options& o) {
  Report rep{"classify", {}, {"structure", "component", "arcs", "class"}, {}, {}, false};
  for (const auto& d : read_structures(o)) {
    const auto comps = arc_components(d);
    for (std::size_t i = 0; i < comps.size(); ++i)
      rep.rows.push_back({emit_structure(d), str(static_cast<long>(i)), arcs_text(comps[i]),
                          to_string(classify_component(d, comps[i]))});
  }
  return rep;
}

Report cmd_decompose(const Options& o) {
  Report rep{"decompose", {}, {"structure", "block", "arcs", "interior", "parent", "children"}, {}, json::array(), false};
  for (const auto& d : read_structures(o)) {
    const auto dec = block_decomposition(d);
    json blocks = json::array();
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
      const Block& blk = dec.blocks[b];
      json arcs = json::array();
      for (const auto& a : blk.arcs) arcs.push_back({a.i, a.j});
      blocks.push_back({{"arcs", arcs},
                        {"interior", blk.interior},
                        {"children", blk.children},
                        {"parent", blk.parent ? json(*blk.parent) : json(nullptr)}});
      rep.rows.push_back({emit_structure(d), str(static_cast<long>(b)), arcs_text(blk.arcs), list_text(blk.interior),
                          blk.parent ? str(static_cast<long>(*blk.parent)) : "", list_text(blk.children)});
    }
    rep.detail->push_back({{"structure", emit_structure(d)},
                           {"exterior", dec.exterior},
                           {"blocks", blocks},
                           {"roots", dec.roots}});
  }
  return rep;
}

Report cmd_clt(const Options& o, const Global& gl) {
  Report rep{"clt", {{"lambda", str(o.lambda)}, {"r", str(o.r)}, {"precision", str(static_cast<long>(gl.precision))}},
             {"rho", "mu", "sigma2"}, {}, {}, false};
  if (o.lambda < 1 || o.r < 1 || o.lambda > o.r + 1) throw std::invalid_argument("need 1 <= lambda <= r + 1");
  const auto p = clt_params(o.lambda, o.r);
  std::vector<std::string> row{real_str(rho(o.lambda, o.r, Real(1)), gl.precision), real_str(p.mu, gl.precision),
                               real_str(p.sigma2, gl.precision)};
  if (o.fd) {
    const auto f = clt_params_finite_difference(o.lambda, o.r, Real("1e-12"));
    rep.columns.push_back("mu_fd");
    rep.columns.push_back("sigma2_fd");
    row.push_back(real_str(f.mu, gl.precision));
    row.push_back(real_str(f.sigma2, gl.precision));
  }
  rep.rows.push_back(row);
  return rep;
}

constexpr int kExpectSeriesCap = 1000;

Report cmd_expect(const Options& o, const Global& gl) {
  const auto pk = pk_from_string(o.type);
  if (!pk) throw std::invalid_argument("type must be H, K, L or M");
  if (o.g < 1) throw std::invalid_argument("genus must be at least 1");
  Report rep{"expect", base_params(o), {"n", "exact_mean", "leading_term", "leading_term_x1e5"}, {}, {}, false};
  rep.params.insert(rep.params.begin(), {"type", o.type});
  std::string exact = "n/a";
  if (o.n <= kExpectSeriesCap) {
    const YJet jet = pk_marked_dg(*pk, gf_params(o, static_cast<std::size_t>(o.n) + 1));
    const auto n = static_cast<std::size_t>(o.n);
    if (jet.value()[n] == 0) throw std::invalid_argument("no structures of this length");
    exact = real_str(to_real(jet.d1()[n] / jet.value()[n]), gl.precision);
  }
  // the closed-form leading term is only derived at genus one with lambda = r = 1
  std::string lead = "n/a", lead5 = "n/a";
  if (o.g == 1 && o.lambda == 1 && o.r == 1 && o.n >= 4) {
    const Real v = pk_expectation_asymptotic(*pk, o.n);
    lead = real_str(v, gl.precision);
    lead5 = real_str(v * 100000, gl.precision);
  }
  rep.rows.push_back({str(o.n), exact, lead, lead5});
  return rep;
}

Report cmd_sample(const Options& o, const Global& gl) {
  SampleSpec spec{o.n, o.g, o.lambda, o.r, o.count, gl.seed};
  std::vector<Diagram> draws;
  if (o.method == "grammar") draws = sample_grammar(spec);
  else if (o.method == "enumerative") draws = sample_enumerative(spec, gl.ceiling);
  else throw std::invalid_argument("method must be grammar or enumerative");
  Report rep{"sample", {{"n", str(o.n)}, {"genus", str(o.g)}, {"lambda", str(o.lambda)}, {"r", str(o.r)},
                        {"count", str(o.count)}, {"seed", std::to_string(gl.seed)}, {"method", o.method},
                        {"generator", kGeneratorId}},
             {"structure", "arcs", "stack", "hairpin", "bulge", "interior", "multi", "H", "K", "L", "M", "higher"},
             {}, {}, true};
  for (const auto& d : draws) {
    const auto loops = count_loops(d);
    const auto pks = count_pseudoknots(d);
    std::vector<std::string> row{emit_structure(d), str(static_cast<long>(d.arc_count()))};
    for (auto k : kLoopKinds) row.push_back(str(loops[k]));
    for (long v : {pks.h, pks.k, pks.l, pks.m, pks.higher}) row.push_back(str(v));
    rep.rows.push_back(row);
  }
  return rep;
}

Report cmd_census(const Options& o, const Global& gl) {
  if (o.lambda < 1 || o.r < 1) throw std::invalid_argument("lambda and r must be at least 1");
  Report rep{"census",
             {{"n", str(o.n)}, {"lambda", str(o.lambda)}, {"r", str(o.r)}, {"ceiling", str(gl.ceiling)}},
             {"genus", "structures", "arcs", "stack", "hairpin", "bulge", "interior", "multi", "H", "K", "L", "M",
              "higher"},
             {}, {}, false};
  EnumConfig cfg;
  cfg.ceiling = gl.ceiling;
  for (const auto& [g, c] : census_by_genus(o.n, o.lambda, o.r, cfg)) {
    if (o.genus_filter && *o.genus_filter != g) continue;
    std::vector<std::string> row{str(g), str(c.structures), str(c.arcs.first)};
    for (const auto& s : c.loops) row.push_back(str(s.first));
    for (const auto& s : c.pk) row.push_back(str(s.first));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological RNA structure counting, sampling and asymptotics", "toporna"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  Options o;
  app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--precision", gl.precision, "Significant digits for real numbers")->check(CLI::Range(15u, 1000u));
  app.add_option("--threads", gl.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", gl.seed, "Sampler seed");
  app.add_option("--ceiling", gl.ceiling, "Largest n for exhaustive enumeration")->check(CLI::Range(1, 24));

  auto add_params = [&](CLI::App* sub, bool genus) {
    if (genus) sub->add_option("--genus", o.g, "Genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--lambda", o.lambda, "Minimum arc length");
    sub->add_option("--r", o.r, "Minimum stack length");
  };
  auto add_structures = [&](CLI::App* sub) {
    sub->add_option("structure", o.structures, "Structures in extended dot-bracket notation");
    sub->add_option("--file", o.file, "File with one structure per line");
  };

  auto* count = app.add_subcommand("count", "Count structures of length n");
  count->add_option("n", o.n, "Length")->required()->check(CLI::NonNegativeNumber);
  add_params(count, true);
  count->add_option("--arcs", o.arcs, "Restrict to this many arcs");
  count->add_flag("--oracle", o.oracle, "Also count by exhaustive enumeration");

  auto* series = app.add_subcommand("series", "Coefficients of D0, Dg or Cg");
  series->add_option("kind", o.kind, "d0, dg or cg")->required();
  add_params(series, true);
  series->add_option("--order", o.order, "Number of coefficients");
  series->add_option("--mark", o.mark, "Loop kind or pseudoknot type marked by y");
  series->add_flag("--table3", o.table3, "Mark multi-loops inside stacks only");

  auto* shapes = app.add_subcommand("shapes", "Shape polynomial by arc count");
  shapes->add_option("--genus", o.g, "Genus")->required();
  shapes->add_option("--mark", o.mark, "H, K, L, M or multi");
  shapes->add_flag("--derive", o.derive, "Derive missing irreducible polynomials");

  auto* irr = app.add_subcommand("irreducibles", "Irreducible shadow polynomial by arc count");
  irr->add_option("--genus", o.g, "Genus")->required();
  irr->add_option("--mark", o.mark, "H, K, L or M");
  irr->add_flag("--derive", o.derive, "Derive from shapes when not built in");

  auto* gen = app.add_subcommand("genus", "Genus and boundary count");
  add_structures(gen);
  auto* cls = app.add_subcommand("classify", "Pseudoknot class of every crossing component");
  add_structures(cls);
  auto* dec = app.add_subcommand("decompose", "Block forest");
  add_structures(dec);

  auto* clt = app.add_subcommand("clt", "Central-limit parameters of the arc count");
  add_params(clt, false);
  clt->add_flag("--fd", o.fd, "Also report finite-difference estimates");

  auto* expect = app.add_subcommand("expect", "Expected pseudoknot count");
  expect->add_option("--type", o.type, "H, K, L or M");
  expect->add_option("--n", o.n, "Length")->required();
  add_params(expect, true);

  auto* sample = app.add_subcommand("sample", "Uniform random structures");
  sample->add_option("--n", o.n, "Length")->required();
  add_params(sample, true);
  sample->add_option("--count", o.count, "Number of draws")->check(CLI::NonNegativeNumber);
  sample->add_option("--method", o.method, "grammar or enumerative");

  auto* census = app.add_subcommand("census", "Brute-force census by genus");
  census->add_option("n", o.n, "Length")->required()->check(CLI::NonNegativeNumber);
  add_params(census, false);
  census->add_option("--genus", o.genus_filter, "Only this genus");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gl.threads > 0) omp_set_num_threads(gl.threads);
    set_working_digits(std::max(gl.precision + 10, 50u));
    Report rep;
    if (*count) rep = cmd_count(o, gl);
    else if (*series) rep = cmd_series(o);
    else if (*shapes) rep = cmd_shapes(o, false);
    else if (*irr) rep = cmd_shapes(o, true);
    else if (*gen) rep = cmd_genus(o);
    else if (*cls) rep = cmd_classify(o);
    else if (*dec) rep = cmd_decompose(o);
    else if (*clt) rep = cmd_clt(o, gl);
    else if (*expect) rep = cmd_expect(o, gl);
    else if (*sample) rep = cmd_sample(o, gl);
    else rep = cmd_census(o, gl);
    if (!(*sample) || gl.format != "plain") rep.lines_only = false;
    render(rep, gl.format, out);
    return kExitOk;
  } catch (const InternalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace toporna
