// trisq command line: subdivisions, measurements, retractions and squeezing.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trisq/errors.hpp"
#include "trisq/io.hpp"

using namespace trisq;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct Common {
  bool as_json = false;
  std::uint64_t seed = 20240917;
};

std::string num(double x) { return format_number(x); }

Simplex parse_simplex(const std::string& text) {
  std::vector<VertexId> ids;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      ids.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad simplex '" + text + "': expected comma-separated vertex ids");
    }
  }
  return Simplex(std::span<const VertexId>(ids));
}

// explicit flag, then TRISQ_SAMPLES, then the default
std::size_t sample_budget(std::size_t flag, std::size_t fallback) {
  if (flag) return flag;
  if (const char* env = std::getenv("TRISQ_SAMPLES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw ParseError("TRISQ_SAMPLES must be a positive integer");
  }
  return fallback;
}

int emit(const Report& rep, const Common& c) {
  std::cout << (c.as_json ? report_to_json(rep) : rep.to_text());
  return rep.ok() ? kOk : kVerificationFailed;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write");
  out << text;
}

int cmd_subdivide(const std::string& in, int levels, const std::string& out, bool flatten) {
  auto doc = read_document(in);
  const auto& spec = require_complex(doc);
  if (levels < 0) throw OutOfRangeError("-i must be non-negative");
  ComplexDocument result;
  if (flatten) {
    const auto rec = iterate_subdivide(build_record(spec), levels);
    result.complex = spec_of(*rec->complex(levels));
  } else {
    result.complex = spec;
    result.complex->subdivision_level += levels;
  }
  const auto rec = build_record(*result.complex);
  write_document(result, out);
  std::cout << "simplices: " << rec->base()->size() << "\nvertices: " << rec->base()->num_vertices() << "\n";
  return kOk;
}

int cmd_measure(const std::string& in, const std::string& control, const Common& c) {
  const auto doc = read_document(in);
  auto rec = build_record(require_complex(doc));
  Realization real = rec->realization(0);
  if (!control.empty()) {
    const auto m = load_single_map(read_document(control));
    if (!(*m.map.domain() == *rec->base()))
      throw DomainMismatchError("control map is not defined on " + in);
    real = realize(m.map, m.codomain->realization(m.codomain_level));
  }
  const auto& x = *real.complex;
  json rows = json::array();
  std::ostringstream text;
  text << "simplex diam rad\n";
  std::size_t shown = 0;
  const std::size_t limit = 200;
  x.for_each([&](const Simplex& s) {
    if (s.dim() < 1) return;
    const double d = diam_measured(s, real), r = rad_measured(s, real);
    if (c.as_json)
      rows.push_back({{"simplex", std::vector<VertexId>(s.begin(), s.end())}, {"diam", d}, {"rad", r}});
    else if (shown++ < limit)
      text << s.to_string() << " " << num(d) << " " << num(r) << "\n";
  });
  if (!c.as_json && shown > limit) text << "... " << shown - limit << " more\n";
  const double me = mesh(real);
  const double co = x.dim() >= 1 ? comesh(real) : 0.0;
  if (c.as_json) {
    std::cout << json{{"simplices", rows}, {"mesh", me}, {"comesh", co}}.dump(2) << "\n";
  } else {
    std::cout << text.str() << "mesh: " << num(me) << "\ncomesh: " << num(co) << "\n";
  }
  return kOk;
}

int cmd_dualcell(const std::string& in, const std::string& simplex) {
  const auto rec = iterate_subdivide(build_record(require_complex(read_document(in))), 1);
  const auto sigma = parse_simplex(simplex);
  const auto d = dual_cell(sigma, *rec);
  std::cout << "dual cell of " << sigma.to_string() << ": " << d.cell.size() << " simplices\n";
  for (const auto& m : d.cell.maximal_simplices()) {
    std::cout << m.to_string() << " over";
    for (VertexId v : m) std::cout << " " << rec->flag_label(1, v).to_string();
    std::cout << "\n";
  }
  return kOk;
}

int cmd_retraction(const std::string& in, double eps, std::optional<int> depth, bool verify, std::size_t samples,
                   const Common& c) {
  const auto x = build_record(require_complex(read_document(in)));
  const auto b = build_retraction(x, eps, depth);
  if (!verify || !c.as_json) {
    std::cout << "epsilon: " << num(eps) << "\ndepth: " << b.depth << "\n";
    std::cout << "simplices at depth: " << b.record->complex(b.depth)->size() << "\n";
    std::size_t moved = 0;
    for (const auto& v : b.record->complex(b.depth)->vertices()) moved += b.r(v.front()) != v.front();
    std::cout << "vertices moved by r: " << moved << "\n";
  }
  if (!verify) return kOk;
  RetractionCheckOptions o;
  o.samples = sample_budget(samples, o.samples);
  o.sampling.seed = c.seed;
  return emit(verify_retraction(b, eps, o), c);
}

int cmd_constants(const std::string& xin, const std::string& yin, std::optional<double> eps) {
  const auto x = build_record(require_complex(read_document(xin)));
  const auto y = build_record(require_complex(read_document(yin)));
  const auto base = squeeze_constants(x, y);
  const double e = eps.value_or(0.5 * base.eps_xy);
  const auto s = squeeze_constants(x, y, e);
  std::cout << "k: " << num(s.k) << "\nK: " << num(s.K) << "\neps(X,Y): " << num(s.eps_xy) << "\nepsilon: " << num(e)
            << (eps ? "" : " (half of eps(X,Y))") << "\ni: " << s.depth << " (X " << s.depth_x << ", Y " << s.depth_y
            << ")\n";
  return kOk;
}

int cmd_lemma(const std::string& in, const std::string& rho, double eps, std::size_t samples, const Common& c) {
  const auto m = load_single_map(read_document(in));
  SandwichOptions o;
  o.samples = sample_budget(samples, o.samples);
  o.seed = c.seed;
  return emit(verify_sandwich(m.map, parse_simplex(rho), eps, o), c);
}

SqueezeOptions squeeze_options(std::size_t samples, const Common& c) {
  SqueezeOptions o;
  o.sampling.random_per_simplex = static_cast<int>(sample_budget(samples, 100));
  o.sampling.seed = c.seed;
  return o;
}

int cmd_squeeze(const std::string& in, std::size_t samples, const std::string& out, const Common& c) {
  const auto doc = read_document(in);
  if (!doc.equivalence) throw ParseError(in + ": /equivalence: missing field");
  const auto o = squeeze_options(samples, c);
  TriangularEquivalence t;
  try {
    t = squeeze(build_equivalence(*doc.equivalence), o);
  } catch (const OutOfRangeError& e) {
    std::cout << "refused: " << e.what() << "\n";
    return kVerificationFailed;
  }
  if (!out.empty()) {
    json cert = {{"format_version", kFormatVersion},
                 {"input", json::parse(serialize_document(doc))},
                 {"samples", o.sampling.random_per_simplex},
                 {"seed", o.sampling.seed},
                 {"depth", t.constants.depth},
                 {"f_tri", std::vector<VertexId>(t.f_tri.images().begin(), t.f_tri.images().end())},
                 {"g_tri", std::vector<VertexId>(t.g_tri.images().begin(), t.g_tri.images().end())},
                 {"report", json::parse(report_to_json(t.certificate))}};
    write_text(out, cert.dump(2) + "\n");
  }
  return emit(t.certificate, c);
}

int cmd_check_triangular(const std::string& fin, const std::string& pin, const Common& c) {
  const auto f = load_single_map(read_document(fin));
  const auto p = load_single_map(read_document(pin));
  const auto res = is_triangular(f.map, p.map);
  Report rep;
  rep.title = "triangularity of " + fin + " over " + pin;
  auto& t = rep.add("face condition", true);
  if (res)
    t.add_pass();
  else
    t.add_fail([&] {
      return res.witness->to_string() + ": " + f.map.apply(*res.witness).to_string() + " is not a face of " +
             p.map.apply(*res.witness).to_string();
    });
  return emit(rep, c);
}

int cmd_render(const std::string& in, bool stages, std::optional<int> level, const std::string& out) {
  const auto doc = read_document(in);
  const auto& spec = require_complex(doc);
  const auto x = build_record(spec);
  RenderOptions o;
  o.level = level.value_or(stages ? 2 : 0);
  if (o.level < 0) throw OutOfRangeError("-i must be non-negative");
  const auto rec = iterate_subdivide(x, o.level);
  if (stages && o.level >= 1) {
    o.stages.push_back(build_r1(*rec));
    for (int j = 2; j <= o.level; ++j) o.stages.push_back(build_rj(*rec, j));
    SimplicialMap r = o.stages.back();
    for (int j = o.level - 1; j >= 1; --j) r = compose(o.stages[static_cast<std::size_t>(j - 1)], r);
    o.r = r;
  }
  Layout layout;
  if (spec.subdivision_level == 0) {
    layout = layout_for(spec, *x->base());
  } else {
    ComplexSpec root = spec;
    root.subdivision_level = 0;
    layout = layout_for(root, *build_record(root)->base());
  }
  const auto svg = render_svg(*rec, layout, o);
  write_text(out, svg);
  std::cout << "polygons: " << rec->complex(o.level)->maximal_simplices().size() << "\n";
  return kOk;
}

int cmd_conjecture(const std::string& in, const Common& c) {
  std::ifstream f(in, std::ios::binary);
  if (!f) throw ParseError(in + ": cannot open");
  json cert;
  try {
    cert = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(in + ": malformed certificate");
  }
  if (!cert.contains("input") || !cert.contains("samples") || !cert.contains("seed"))
    throw ParseError(in + ": not a certificate");
  const auto doc = parse_document(cert.at("input").dump());
  if (!doc.equivalence) throw ParseError(in + ": /input/equivalence: missing field");
  Common cc = c;
  cc.seed = cert.at("seed").get<std::uint64_t>();
  const auto t = squeeze(build_equivalence(*doc.equivalence),
                         squeeze_options(cert.at("samples").get<std::size_t>(), cc));
  std::cout << "experimental probe, not a certificate\n";
  emit(conjecture_probe(t), c);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trisq: triangular squeezing of controlled homotopy equivalences"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.as_json, "Print reports as JSON");
  app.add_option("--seed", common.seed, "Base seed for sampling");

  std::string in, in2, out, control, simplex, rho;
  int levels = 1;
  std::optional<int> depth, level;
  double eps = 0;
  std::optional<double> eps_opt;
  bool verify = false, flatten = false, stages = false;
  std::size_t samples = 0;

  auto* sub = app.add_subcommand("subdivide", "Write Sd^N of a complex");
  sub->add_option("input", in)->required();
  sub->add_option("-i", levels, "Number of subdivisions")->required();
  sub->add_option("-o", out, "Output document")->required();
  sub->add_flag("--flatten", flatten, "Write the subdivided simplices instead of a declared subdivision");

  auto* meas = app.add_subcommand("measure", "Print diam and rad per simplex, mesh and comesh");
  meas->add_option("input", in)->required();
  meas->add_option("--control", control, "Measure through this map into its codomain");

  auto* dual = app.add_subcommand("dualcell", "List the dual cell of a simplex in Sd X");
  dual->add_option("input", in)->required();
  dual->add_option("--simplex", simplex, "Comma-separated vertex ids")->required();

  auto* retr = app.add_subcommand("retraction", "Build r : Sd^i X -> X and the homotopy P");
  retr->add_option("input", in)->required();
  retr->add_option("--epsilon", eps)->required();
  retr->add_option("-i", depth, "Subdivision depth (at least the minimum)");
  retr->add_flag("--verify", verify, "Run the certificate checks");
  retr->add_option("--samples", samples, "Collar samples");

  auto* cons = app.add_subcommand("constants", "Print k, K, eps(X,Y) and the depth");
  cons->add_option("x", in)->required();
  cons->add_option("y", in2)->required();
  cons->add_option("--epsilon", eps_opt);

  auto* lemma = app.add_subcommand("lemma-check", "Sample the preimage sandwich for a map of simplices");
  lemma->add_option("map", in)->required();
  lemma->add_option("--rho", rho, "Proper face of the target")->required();
  lemma->add_option("--epsilon", eps)->required();
  lemma->add_option("--samples", samples);

  auto* sq = app.add_subcommand("squeeze", "Build and certify a triangular equivalence");
  sq->add_option("data", in)->required();
  sq->add_option("--samples", samples, "Random points per simplex");
  sq->add_option("-o", out, "Certificate output");

  auto* tri = app.add_subcommand("check-triangular", "Exact triangularity of F over the control P");
  tri->add_option("map", in)->required();
  tri->add_option("--control", in2)->required();

  auto* ren = app.add_subcommand("render", "SVG of a subdivision and its retraction stages");
  ren->add_option("input", in)->required();
  ren->add_flag("--stages", stages, "Draw r_1..r_i and colour the top simplices");
  ren->add_option("-i", level, "Subdivision level to draw");
  ren->add_option("-o", out)->required();

  auto* probe = app.add_subcommand("conjecture-probe", "Experimental: triangularity over Sd Y");
  probe->add_option("certificate", in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*sub) return cmd_subdivide(in, levels, out, flatten);
    if (*meas) return cmd_measure(in, control, common);
    if (*dual) return cmd_dualcell(in, simplex);
    if (*retr) return cmd_retraction(in, eps, depth, verify, samples, common);
    if (*cons) return cmd_constants(in, in2, eps_opt);
    if (*lemma) return cmd_lemma(in, rho, eps, samples, common);
    if (*sq) return cmd_squeeze(in, samples, out, common);
    if (*tri) return cmd_check_triangular(in, in2, common);
    if (*ren) return cmd_render(in, stages, level, out);
    if (*probe) return cmd_conjecture(in, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
