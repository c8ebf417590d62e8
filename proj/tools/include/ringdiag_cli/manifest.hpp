#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ringdiag/fracture.hpp"

namespace ringdiag::cli {

using Json = nlohmann::ordered_json;

enum class InputKind { Parse, Reference, UnknownTask };

/// Malformed or inconsistent input.  `where` is a JSON pointer into the
/// manifest (or a byte offset for syntax errors).
class InputError : public std::runtime_error {
 public:
  InputError(InputKind kind, const std::string& where, const std::string& what);
  InputKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  InputKind kind_;
  std::string where_;
};

struct TaskSpec {
  std::string id;
  std::string op;
  /// Everything else in the task entry: references by name, inline values
  /// and options, kept verbatim.
  Json args = Json::object();

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct InclusionSpec {
  std::string ambient;
  Inclusion inclusion;
  friend bool operator==(const InclusionSpec&, const InclusionSpec&) = default;
};

struct RingDiagramSpec {
  std::string category;
  std::map<std::string, std::string> rings;  // object -> ring name
  RingDiagram diagram;
  friend bool operator==(const RingDiagramSpec&, const RingDiagramSpec&) = default;
};

struct ComplexSpec {
  std::string ring;
  ChainComplex complex;
  friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

struct ModuleDiagramSpec {
  std::string rings;                          // ring diagram name
  std::map<std::string, std::string> values;  // object -> complex name
  ModuleDiagram diagram;
  friend bool operator==(const ModuleDiagramSpec&, const ModuleDiagramSpec&) = default;
};

struct Manifest {
  std::map<std::string, FiniteCategory> categories;
  std::map<std::string, InclusionSpec> inclusions;
  std::map<std::string, Ring> rings;
  std::map<std::string, RingDiagramSpec> ring_diagrams;
  std::map<std::string, ComplexSpec> complexes;
  std::map<std::string, ModuleDiagramSpec> module_diagrams;
  std::map<std::string, LocalizationSquare> squares;
  std::vector<TaskSpec> tasks;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

constexpr int kManifestSchema = 1;

Manifest parse_manifest(const Json& doc);
Manifest parse_manifest_text(const std::string& text);
Manifest load_manifest(const std::string& path);
Json serialize_manifest(const Manifest& m);

// Value serializations shared with the report writer.
Json to_json(const Ring& r);
Json to_json(const Matrix& m);
Json to_json(const ModuleInvariants& inv);
Json to_json(const FiniteCategory& c);
Json to_json(const ChainComplex& c);
Json to_json(const LocalizationSquare& sq);
Json homology_json(const std::vector<std::pair<int, ModuleInvariants>>& table);

Ring ring_from_json(const Json& j, const std::string& where);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where);
/// {rank, torsion: [[p, e], ...]} over `ring`.
FPModule module_from_spec(const Ring& ring, const Json& j, const std::string& where);
LocalizationSquare square_from_json(const Json& j, const std::string& where);

}  // namespace ringdiag::cli
