#include "trisq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "trisq/errors.hpp"

namespace trisq {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail_at(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail_at(where + "/" + key, "unknown field '" + key + "'");
  }
}

const json& member(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) fail_at(where + "/" + key, "missing field");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail_at(where, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 0 || v > 0x7fffffff) fail_at(where, "integer out of range");
  return static_cast<int>(v);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail_at(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail_at(where, "expected a finite number");
  return v;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail_at(where, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail_at(where, "expected an array");
  return j;
}

std::string idx(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

ComplexSpec parse_complex_fields(const json& j, const std::string& where) {
  ComplexSpec c;
  if (j.contains("vertices")) {
    const std::string w = where + "/vertices";
    std::vector<VertexEntry> vs;
    std::set<VertexId> seen;
    const auto& arr = as_array(j.at("vertices"), w);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string wi = idx(w, i);
      only_keys(arr[i], wi, {"id", "position"});
      VertexEntry e;
      e.id = as_int(member(arr[i], wi, "id"), wi + "/id");
      if (!seen.insert(e.id).second) fail_at(wi + "/id", "duplicate vertex " + std::to_string(e.id));
      if (arr[i].contains("position")) {
        const auto& pos = as_array(arr[i].at("position"), wi + "/position");
        if (pos.size() != 2 && pos.size() != 3) fail_at(wi + "/position", "expected 2 or 3 coordinates");
        for (std::size_t k = 0; k < pos.size(); ++k) e.position.push_back(as_number(pos[k], idx(wi + "/position", k)));
      }
      vs.push_back(std::move(e));
    }
    c.vertices = std::move(vs);
  }
  const std::string w = where + "/maximal_simplices";
  const auto& arr = as_array(member(j, where, "maximal_simplices"), w);
  std::set<std::vector<VertexId>> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& s = as_array(arr[i], idx(w, i));
    if (s.empty()) fail_at(idx(w, i), "empty simplex");
    std::vector<VertexId> verts;
    for (std::size_t k = 0; k < s.size(); ++k) verts.push_back(as_int(s[k], idx(idx(w, i), k)));
    auto key = verts;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) fail_at(idx(w, i), "repeated vertex");
    if (!seen.insert(key).second) fail_at(idx(w, i), "duplicate maximal simplex");
    c.maximal_simplices.push_back(std::move(verts));
  }
  if (c.vertices) {
    std::set<VertexId> listed;
    for (const auto& v : *c.vertices) listed.insert(v.id);
    for (std::size_t i = 0; i < c.maximal_simplices.size(); ++i)
      for (VertexId v : c.maximal_simplices[i])
        if (!listed.count(v)) fail_at(idx(w, i), "vertex " + std::to_string(v) + " is not listed");
  }
  if (j.contains("subdivision_level")) c.subdivision_level = as_int(j.at("subdivision_level"), where + "/subdivision_level");
  return c;
}

ComplexSpec parse_complex(const json& j, const std::string& where) {
  only_keys(j, where, {"vertices", "maximal_simplices", "subdivision_level"});
  return parse_complex_fields(j, where);
}

MapSpec parse_map(const json& j, const std::string& where, bool with_codomain) {
  if (with_codomain)
    only_keys(j, where, {"domain_level", "codomain", "codomain_level", "images"});
  else
    only_keys(j, where, {"domain_level", "images"});
  MapSpec m;
  if (j.contains("domain_level")) m.domain_level = as_int(j.at("domain_level"), where + "/domain_level");
  if (j.contains("codomain")) {
    m.codomain = as_string(j.at("codomain"), where + "/codomain");
    if (m.codomain != "self" && m.codomain != "codomain") fail_at(where + "/codomain", "expected \"self\" or \"codomain\"");
  }
  if (j.contains("codomain_level")) m.codomain_level = as_int(j.at("codomain_level"), where + "/codomain_level");
  const std::string w = where + "/images";
  const auto& arr = as_array(member(j, where, "images"), w);
  std::set<VertexId> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& pair = as_array(arr[i], idx(w, i));
    if (pair.size() != 2) fail_at(idx(w, i), "expected [source, target]");
    const VertexId a = as_int(pair[0], idx(idx(w, i), 0));
    const VertexId b = as_int(pair[1], idx(idx(w, i), 1));
    if (!seen.insert(a).second) fail_at(idx(w, i), "vertex " + std::to_string(a) + " assigned twice");
    m.images.emplace_back(a, b);
  }
  return m;
}

HomotopySpec parse_homotopy(const json& j, const std::string& where) {
  HomotopySpec h;
  h.kind = as_string(j, where);
  if (h.kind != "straight_line") fail_at(where, "only \"straight_line\" homotopies are supported");
  return h;
}

json complex_json(const ComplexSpec& c) {
  json j = json::object();
  if (c.vertices) {
    json vs = json::array();
    for (const auto& v : *c.vertices) {
      json e = {{"id", v.id}};
      if (!v.position.empty()) e["position"] = v.position;
      vs.push_back(std::move(e));
    }
    j["vertices"] = std::move(vs);
  }
  j["maximal_simplices"] = c.maximal_simplices;
  if (c.subdivision_level != 0) j["subdivision_level"] = c.subdivision_level;
  return j;
}

json map_json(const MapSpec& m, bool with_codomain) {
  json j = json::object();
  if (m.domain_level != 0) j["domain_level"] = m.domain_level;
  if (with_codomain) {
    j["codomain"] = m.codomain;
    if (m.codomain_level != 0) j["codomain_level"] = m.codomain_level;
  }
  json images = json::array();
  for (const auto& [a, b] : m.images) images.push_back({a, b});
  j["images"] = std::move(images);
  return j;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

ComplexDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  only_keys(j, "", {"format_version", "vertices", "maximal_simplices", "subdivision_level", "codomain", "maps",
                    "equivalence"});
  ComplexDocument doc;
  doc.format_version = as_string(member(j, "", "format_version"), "/format_version");
  if (doc.format_version.substr(0, 2) != "1.") fail_at("/format_version", "unsupported version " + doc.format_version);
  if (j.contains("maximal_simplices"))
    doc.complex = parse_complex_fields(j, "");
  else if (j.contains("vertices") || j.contains("subdivision_level"))
    fail_at("/maximal_simplices", "missing field");
  if (j.contains("codomain")) doc.codomain = parse_complex(j.at("codomain"), "/codomain");
  if (j.contains("maps")) {
    const auto& maps = j.at("maps");
    if (!maps.is_object()) fail_at("/maps", "expected an object");
    for (const auto& [name, value] : maps.items()) {
      auto m = parse_map(value, "/maps/" + name, true);
      if (m.codomain == "codomain" && !doc.codomain) fail_at("/maps/" + name + "/codomain", "document has no codomain");
      doc.maps.emplace(name, std::move(m));
    }
    if (!doc.maps.empty() && !doc.complex) fail_at("/maximal_simplices", "maps need a domain complex");
  }
  if (j.contains("equivalence")) {
    const auto& e = j.at("equivalence");
    const std::string w = "/equivalence";
    only_keys(e, w, {"x", "y", "f", "g", "h1", "h2", "epsilon"});
    EquivalenceSpec s;
    s.x = parse_complex(member(e, w, "x"), w + "/x");
    s.y = parse_complex(member(e, w, "y"), w + "/y");
    s.f = parse_map(member(e, w, "f"), w + "/f", false);
    s.g = parse_map(member(e, w, "g"), w + "/g", false);
    s.h1 = parse_homotopy(member(e, w, "h1"), w + "/h1");
    s.h2 = parse_homotopy(member(e, w, "h2"), w + "/h2");
    s.epsilon = as_number(member(e, w, "epsilon"), w + "/epsilon");
    doc.equivalence = std::move(s);
  }
  return doc;
}

std::string serialize_document(const ComplexDocument& doc) {
  json j = json::object();
  j["format_version"] = doc.format_version;
  if (doc.complex) j.update(complex_json(*doc.complex));
  if (doc.codomain) j["codomain"] = complex_json(*doc.codomain);
  if (!doc.maps.empty()) {
    json maps = json::object();
    for (const auto& [name, m] : doc.maps) maps[name] = map_json(m, true);
    j["maps"] = std::move(maps);
  }
  if (doc.equivalence) {
    const auto& s = *doc.equivalence;
    j["equivalence"] = {{"x", complex_json(s.x)}, {"y", complex_json(s.y)}, {"f", map_json(s.f, false)},
                        {"g", map_json(s.g, false)}, {"h1", s.h1.kind},  {"h2", s.h2.kind},
                        {"epsilon", s.epsilon}};
  }
  return j.dump(2) + "\n";
}

ComplexDocument read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_document(const ComplexDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write");
  out << serialize_document(doc);
}

RecordPtr build_record(const ComplexSpec& spec) {
  auto simplices = spec.maximal_simplices;
  if (spec.vertices)
    for (const auto& v : *spec.vertices) simplices.push_back({v.id});
  if (simplices.empty()) throw DegenerateInputError("empty complex");
  auto base = SubdivisionRecord::create(make_complex(simplices));
  if (spec.subdivision_level == 0) return base;
  return iterate_subdivide(base, spec.subdivision_level)->rebase(spec.subdivision_level);
}

const ComplexSpec& require_complex(const ComplexDocument& doc) {
  if (!doc.complex) throw ParseError("/maximal_simplices: document has no complex");
  return *doc.complex;
}

namespace {

SimplicialMap build_map_from(const MapSpec& m, const RecordPtr& dom, const RecordPtr& cod) {
  const auto dc = dom->complex(m.domain_level);
  const auto cc = cod->complex(m.codomain_level);
  return build_simplicial_map(std::span<const std::pair<VertexId, VertexId>>(m.images), dc, cc);
}

RecordPtr deep_enough(const RecordPtr& rec, int level) { return level > rec->depth() ? iterate_subdivide(rec, level) : rec; }

}  // namespace

LoadedMap load_map(const ComplexDocument& doc, const std::string& name) {
  const auto it = doc.maps.find(name);
  if (it == doc.maps.end()) throw ParseError("/maps/" + name + ": no such map");
  const auto& m = it->second;
  LoadedMap out;
  out.domain = deep_enough(build_record(require_complex(doc)), m.domain_level);
  out.codomain = m.codomain == "self" ? out.domain : build_record(*doc.codomain);
  out.codomain = deep_enough(out.codomain, m.codomain_level);
  if (m.codomain == "self") out.domain = deep_enough(out.codomain, m.domain_level);
  out.domain_level = m.domain_level;
  out.codomain_level = m.codomain_level;
  out.map = build_map_from(m, out.domain, out.codomain);
  return out;
}

LoadedMap load_single_map(const ComplexDocument& doc, const std::optional<std::string>& name) {
  if (name) return load_map(doc, *name);
  if (doc.maps.size() != 1) throw ParseError("/maps: expected exactly one map, found " + std::to_string(doc.maps.size()));
  return load_map(doc, doc.maps.begin()->first);
}

EquivalenceData build_equivalence(const EquivalenceSpec& spec) {
  EquivalenceData d;
  d.x = build_record(spec.x);
  d.y = build_record(spec.y);
  d.f_level = spec.f.domain_level;
  d.g_level = spec.g.domain_level;
  d.x = deep_enough(d.x, d.f_level);
  d.y = deep_enough(d.y, d.g_level);
  d.f = build_map_from(spec.f, d.x, d.y);
  d.g = build_map_from(spec.g, d.y, d.x);
  if (d.f_level != 0 || d.g_level != 0)
    throw UnsupportedError("straight-line homotopies need f and g on X and Y themselves");
  d.h1 = straight_line_to_identity("h1", d.y, 0, compose(d.f, d.g), d.y->realization(0));
  d.h2 = straight_line_to_identity("h2", d.x, 0, compose(d.g, d.f), d.x->realization(0));
  d.epsilon = spec.epsilon;
  return d;
}

ComplexSpec spec_of(const SimplicialComplex& c) {
  ComplexSpec s;
  for (const auto& m : c.maximal_simplices()) s.maximal_simplices.emplace_back(m.begin(), m.end());
  return s;
}

std::string report_to_json(const Report& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"exact", c.exact},
                      {"pass", c.pass},
                      {"fail", c.fail},
                      {"unknown", c.unknown},
                      {"vacuous", c.vacuous},
                      {"witnesses", c.witnesses}});
  json info = json::array();
  for (const auto& [k, v] : report.info) info.push_back({k, v});
  const json j = {{"title", report.title}, {"info", info}, {"checks", checks}, {"ok", report.ok()}};
  return j.dump(2) + "\n";
}

Layout layout_for(const ComplexSpec& spec, const SimplicialComplex& base) {
  Layout out;
  if (spec.vertices) {
    for (const auto& v : *spec.vertices)
      if (v.position.size() >= 2) out[v.id] = Eigen::Vector2d(v.position[0], v.position[1]);
    if (out.size() == spec.vertices->size()) return out;
    out.clear();
  }
  const auto tops = base.maximal_simplices();
  if (tops.size() != 1 || tops.front().dim() > 2)
    throw UnsupportedError("automatic layout is only available for a single simplex of dimension at most 2");
  const Simplex& s = tops.front();
  const double h = std::sqrt(3.0) / 2;
  const Eigen::Vector2d corners[3] = {{0, 0}, {1, 0}, {0.5, h}};
  for (std::size_t k = 0; k < s.size(); ++k) out[s[k]] = corners[k];
  return out;
}

std::string render_svg(const SubdivisionRecord& rec, const Layout& layout, const RenderOptions& o) {
  if (rec.geometry()->dim() > 2) throw UnsupportedError("rendering needs dimension at most 2");
  const auto& geometry = *rec.geometry();
  for (const auto& v : geometry.vertices())
    if (!layout.count(v.front())) throw UnsupportedError("no layout coordinates for vertex " + std::to_string(v.front()));
  if (o.level > rec.depth()) throw OutOfRangeError("record is not subdivided to level " + std::to_string(o.level));

  Eigen::Vector2d lo = layout.begin()->second, hi = lo;
  for (const auto& [v, p] : layout) {
    (void)v;
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double margin = 24;
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double scale = (o.size - 2 * margin) / span;
  auto at = [&](const PointInComplex& p) {
    Eigen::Vector2d q = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < p.carrier.size(); ++k) q += p.coords(static_cast<Eigen::Index>(k)) * layout.at(p.carrier[k]);
    return Eigen::Vector2d(margin + (q.x() - lo.x()) * scale, o.size - margin - (q.y() - lo.y()) * scale);
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(o.size) << "\" height=\""
      << fmt(o.size) << "\" viewBox=\"0 0 " << fmt(o.size) << " " << fmt(o.size) << "\">\n";
  out << "<g stroke=\"#333333\" stroke-width=\"1\" stroke-linejoin=\"round\">\n";
  const auto& c = *rec.complex(o.level);
  for (const auto& tau : c.maximal_simplices()) {
    std::string fill = "#ffffff";
    if (o.r) {
      const Simplex img = o.r->apply(tau);
      fill = img == rec.carrier(tau, o.level, 0) ? "#d62728" : "#bbbbbb";
    }
    out << "<polygon points=\"";
    for (std::size_t k = 0; k < tau.size(); ++k) {
      const auto q = at(rec.position(o.level, tau[k]));
      out << (k ? " " : "") << fmt(q.x()) << "," << fmt(q.y());
    }
    out << "\" fill=\"" << fill << "\"" << (tau.dim() < 2 ? " stroke-width=\"3\"" : "") << "/>\n";
  }
  out << "</g>\n";
  if (!o.stages.empty()) {
    out << "<g stroke=\"#000000\" stroke-width=\"3.5\" stroke-linecap=\"round\">\n";
    for (std::size_t j = 1; j <= o.stages.size() && static_cast<int>(j) <= o.level; ++j) {
      const auto& rj = o.stages[j - 1];
      for (const auto& w : rec.complex(static_cast<int>(j))->vertices()) {
        const VertexId img = rj(w.front());
        const auto a = at(rec.position(static_cast<int>(j), w.front()));
        const auto b = at(rec.position(static_cast<int>(j) - 1, img));
        if ((a - b).norm() < 1e-9) continue;
        out << "<line x1=\"" << fmt(a.x()) << "\" y1=\"" << fmt(a.y()) << "\" x2=\"" << fmt(b.x()) << "\" y2=\""
            << fmt(b.y()) << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace trisq
