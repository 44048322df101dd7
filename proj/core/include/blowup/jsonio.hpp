#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace blowup {

// Deterministic JSON emitter: keys keep insertion order, doubles print with 17
// significant digits, output is byte-stable across runs. Parsing of input
// configs is done elsewhere (vendored nlohmann), this type is output-only.
class JsonValue {
  public:
    static JsonValue object();
    static JsonValue array();
    static JsonValue number(double v);
    static JsonValue integer(std::int64_t v);
    static JsonValue str(std::string v);
    static JsonValue boolean(bool v);
    static JsonValue null();

    // Object helpers; key order is emission order.
    JsonValue& set(const std::string& key, JsonValue v);
    JsonValue& set(const std::string& key, double v);
    JsonValue& set(const std::string& key, std::int64_t v);
    JsonValue& set(const std::string& key, int v);
    JsonValue& set(const std::string& key, const std::string& v);
    JsonValue& set(const std::string& key, const char* v);
    JsonValue& set(const std::string& key, bool v);

    // Array helper.
    JsonValue& push(JsonValue v);

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { object, array, number, integer, string_, boolean, null };
    Kind kind_ = Kind::null;
    double num_ = 0.0;
    std::int64_t int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> elements_;

    void write(std::string& out, int indent, int depth) const;
};

// 17-significant-digit rendering used for both CSV and JSON numbers.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace blowup
