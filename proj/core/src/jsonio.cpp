#include "blowup/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blowup {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
}

JsonValue JsonValue::number(double d) {
    JsonValue v;
    v.kind_ = Kind::number;
    v.num_ = d;
    return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
    JsonValue v;
    v.kind_ = Kind::integer;
    v.int_ = i;
    return v;
}

JsonValue JsonValue::str(std::string s) {
    JsonValue v;
    v.kind_ = Kind::string_;
    v.str_ = std::move(s);
    return v;
}

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::boolean;
    v.bool_ = b;
    return v;
}

JsonValue JsonValue::null() { return JsonValue(); }

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::object) throw std::logic_error("JsonValue::set on non-object");
    members_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::set(const std::string& key, double v) { return set(key, number(v)); }
JsonValue& JsonValue::set(const std::string& key, std::int64_t v) { return set(key, integer(v)); }
JsonValue& JsonValue::set(const std::string& key, int v) {
    return set(key, integer(static_cast<std::int64_t>(v)));
}
JsonValue& JsonValue::set(const std::string& key, const std::string& v) { return set(key, str(v)); }
JsonValue& JsonValue::set(const std::string& key, const char* v) { return set(key, str(v)); }
JsonValue& JsonValue::set(const std::string& key, bool v) { return set(key, boolean(v)); }

JsonValue& JsonValue::push(JsonValue v) {
    if (kind_ != Kind::array) throw std::logic_error("JsonValue::push on non-array");
    elements_.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void pad(std::string& out, int indent, int depth) {
    if (indent > 0) out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    const char* nl = indent > 0 ? "\n" : "";
    switch (kind_) {
        case Kind::null: out += "null"; break;
        case Kind::boolean: out += bool_ ? "true" : "false"; break;
        case Kind::integer: out += std::to_string(int_); break;
        case Kind::number: {
            // JSON cannot carry inf/nan; encode as strings so reports stay parseable.
            if (std::isfinite(num_)) {
                out += format_double(num_);
            } else {
                write_escaped(out, format_double(num_));
            }
            break;
        }
        case Kind::string_: write_escaped(out, str_); break;
        case Kind::object: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{";
            out += nl;
            for (std::size_t i = 0; i < members_.size(); ++i) {
                pad(out, indent, depth + 1);
                write_escaped(out, members_[i].first);
                out += indent > 0 ? ": " : ":";
                members_[i].second.write(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ",";
                out += nl;
            }
            pad(out, indent, depth);
            out += "}";
            break;
        }
        case Kind::array: {
            if (elements_.empty()) {
                out += "[]";
                break;
            }
            out += "[";
            out += nl;
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                pad(out, indent, depth + 1);
                elements_[i].write(out, indent, depth + 1);
                if (i + 1 < elements_.size()) out += ",";
                out += nl;
            }
            pad(out, indent, depth);
            out += "]";
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write_text_file: write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace blowup
