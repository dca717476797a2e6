#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trisq/squeeze.hpp"

namespace trisq {

inline constexpr const char* kFormatVersion = "1.0";

struct VertexEntry {
  VertexId id = 0;
  std::vector<double> position;  // 2 or 3 layout coordinates, or empty
  friend bool operator==(const VertexEntry&, const VertexEntry&) = default;
};

/// A complex; with `subdivision_level` n > 0 it is Sd^n of the listed
/// simplices, measured in them, and its vertex ids follow the subdivision
/// numbering.
struct ComplexSpec {
  std::optional<std::vector<VertexEntry>> vertices;
  std::vector<std::vector<VertexId>> maximal_simplices;
  int subdivision_level = 0;
  friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

/// Vertex assignment from level `domain_level` of the domain into level
/// `codomain_level` of the codomain ("self" or "codomain" in a document).
struct MapSpec {
  int domain_level = 0;
  std::string codomain = "self";
  int codomain_level = 0;
  std::vector<std::pair<VertexId, VertexId>> images;
  friend bool operator==(const MapSpec&, const MapSpec&) = default;
};

/// A homotopy between a composite and the identity; only straight lines.
struct HomotopySpec {
  std::string kind = "straight_line";
  friend bool operator==(const HomotopySpec&, const HomotopySpec&) = default;
};

struct EquivalenceSpec {
  ComplexSpec x;
  ComplexSpec y;
  MapSpec f;  // Sd^a X -> Y
  MapSpec g;  // Sd^b Y -> X
  HomotopySpec h1;
  HomotopySpec h2;
  double epsilon = 0;
  friend bool operator==(const EquivalenceSpec&, const EquivalenceSpec&) = default;
};

struct ComplexDocument {
  std::string format_version = kFormatVersion;
  std::optional<ComplexSpec> complex;  // top-level vertices / maximal_simplices
  std::optional<ComplexSpec> codomain;
  std::map<std::string, MapSpec> maps;
  std::optional<EquivalenceSpec> equivalence;
  friend bool operator==(const ComplexDocument&, const ComplexDocument&) = default;
};

/// Throws ParseError with line and column for malformed JSON and with a
/// JSON pointer for unknown fields, wrong types and duplicate simplices.
ComplexDocument parse_document(const std::string& text);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const ComplexDocument& doc);

ComplexDocument read_document(const std::string& path);
void write_document(const ComplexDocument& doc, const std::string& path);

/// The declared complex as level 0 of a record.
RecordPtr build_record(const ComplexSpec& spec);
const ComplexSpec& require_complex(const ComplexDocument& doc);

/// A named map of the document; domain is the top-level complex.
struct LoadedMap {
  RecordPtr domain;
  int domain_level = 0;
  RecordPtr codomain;
  int codomain_level = 0;
  SimplicialMap map;
};
LoadedMap load_map(const ComplexDocument& doc, const std::string& name);
/// The only map of the document, or the one named `name` when given.
LoadedMap load_single_map(const ComplexDocument& doc, const std::optional<std::string>& name = {});

EquivalenceData build_equivalence(const EquivalenceSpec& spec);

/// Spec of a plain complex (vertex ids and maximal simplices).
ComplexSpec spec_of(const SimplicialComplex& c);

/// Report as a JSON object (title, info, checks, ok), two-space indent.
std::string report_to_json(const Report& report);

using Layout = std::map<VertexId, Eigen::Vector2d>;

/// Layout coordinates from the document, or a standard picture when the
/// complex is a single simplex of dimension <= 2. Throws UnsupportedError otherwise.
Layout layout_for(const ComplexSpec& spec, const SimplicialComplex& base);

struct RenderOptions {
  int level = 0;                       // which level of the record to draw
  std::vector<SimplicialMap> stages;   // r_1..r_level, drawn as thick edges
  std::optional<SimplicialMap> r;      // composite, drives the fills
  double size = 480;
};

/// SVG 1.1 picture of a level of a record of dimension <= 2: one polygon per
/// top simplex, grey when r sends it into the boundary of its carrier, red
/// when onto, and a thick segment from each vertex to its stage image.
std::string render_svg(const SubdivisionRecord& rec, const Layout& layout, const RenderOptions& options);

}  // namespace trisq
