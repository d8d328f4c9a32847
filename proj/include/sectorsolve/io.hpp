#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sectorsolve/discretization.hpp"

namespace sectorsolve {

/// Formats a double in fixed scientific notation with 9 significant digits;
/// all numeric file output goes through this.
std::string format_sci(double v);

/// Order-preserving JSON document writer emitting format_sci numbers.
class JsonValue {
public:
  using Array = std::vector<JsonValue>;
  struct Object {
    std::vector<std::pair<std::string, JsonValue>> members;
    JsonValue& operator[](const std::string& key);
  };

  JsonValue() : data_(nullptr) {}
  JsonValue(std::nullptr_t) : data_(nullptr) {}
  JsonValue(bool b) : data_(b) {}
  JsonValue(int i) : data_(static_cast<long long>(i)) {}
  JsonValue(long long i) : data_(i) {}
  JsonValue(double d) : data_(d) {}
  JsonValue(const char* s) : data_(std::string(s)) {}
  JsonValue(std::string s) : data_(std::move(s)) {}
  JsonValue(Array a) : data_(std::move(a)) {}
  JsonValue(Object o) : data_(std::move(o)) {}

  static JsonValue object() { return JsonValue(Object{}); }
  static JsonValue array() { return JsonValue(Array{}); }

  JsonValue& operator[](const std::string& key);
  void push_back(JsonValue v);
  std::string dump(int indent = 2) const;

private:
  void write(std::string& out, int indent, int depth) const;
  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> data_;
};

enum class FieldFormat { Vtk, Csv };

/// Legacy VTK ASCII (v3.0) unstructured-grid export of the field with the
/// values as POINT_DATA scalars, or CSV with header "node,x,y,value".
void export_field(const Field& field, FieldFormat format, const std::string& path,
                  const std::string& name = "value");

/// Mesh export: triangle cells in `path`; boundary edges as a companion line
/// mesh (same basename + "_boundary.vtk") carrying the tags as CELL_DATA.
void export_mesh_vtk(const Mesh& mesh, const std::string& path);

struct CsvField {
  std::vector<int> node;
  std::vector<double> x, y, value;
};
CsvField read_field_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sectorsolve
