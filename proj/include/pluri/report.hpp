#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pluri {

// Minimal JSON value with insertion-ordered objects and a fixed number
// rendering (17 significant digits), so identical runs serialize to
// identical bytes.
class Json {
 public:
  Json() : type_(Type::Null) {}
  Json(bool b) : type_(Type::Bool), bool_(b) {}
  Json(int v) : type_(Type::Int), int_(v) {}
  Json(long long v) : type_(Type::Int), int_(v) {}
  Json(std::uint64_t v) : type_(Type::UInt), uint_(v) {}
  Json(double v) : type_(Type::Double), double_(v) {}
  Json(const char* s) : type_(Type::String), string_(s) {}
  Json(std::string s) : type_(Type::String), string_(std::move(s)) {}

  static Json object();
  static Json array();

  Json& operator[](const std::string& key);  // object entry, appended on first use
  void push_back(Json value);                // array element

  std::string dump(int indent = 2) const;

 private:
  enum class Type { Null, Bool, Int, UInt, Double, String, Array, Object };

  void write(std::string& out, int indent, int depth) const;

  Type type_;
  bool bool_ = false;
  long long int_ = 0;
  std::uint64_t uint_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<Json> array_;
  std::vector<std::pair<std::string, Json>> object_;
};

std::string format_double(double v);

}  // namespace pluri
