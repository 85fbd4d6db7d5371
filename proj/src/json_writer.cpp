#include "sipsim/json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "sipsim/error.hpp"

namespace sipsim::json {

Value Value::boolean(bool b) {
    Value v;
    v.kind_ = Kind::Bool;
    v.scalar_ = b ? "true" : "false";
    return v;
}

Value Value::string(std::string_view s) {
    Value v;
    v.kind_ = Kind::String;
    v.scalar_ = quote(s);
    return v;
}

Value Value::object() {
    Value v;
    v.kind_ = Kind::Object;
    return v;
}

Value Value::array() {
    Value v;
    v.kind_ = Kind::Array;
    return v;
}

Value Value::fixed(double x, int decimals) {
    if (!std::isfinite(x)) throw ComputeError("non-finite value in report");
    Value v;
    v.kind_ = Kind::Number;
    v.scalar_ = fmt::format("{:.{}f}", x, decimals);
    if (v.scalar_.front() == '-' && v.scalar_.find_first_not_of("-0.") == std::string::npos) v.scalar_.erase(0, 1);
    return v;
}

Value Value::integer(std::int64_t x) {
    Value v;
    v.kind_ = Kind::Number;
    v.scalar_ = fmt::format("{}", x);
    return v;
}

Value Value::exact(double x) {
    if (!std::isfinite(x)) throw ComputeError("non-finite value in report");
    Value v;
    v.kind_ = Kind::Number;
    v.scalar_ = fmt::format("{}", x);
    return v;
}

Value& Value::set(std::string key, Value v) {
    if (kind_ != Kind::Object) throw std::logic_error("json: set on non-object");
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (keys_[i] == key) {
            items_[i] = std::move(v);
            return items_[i];
        }
    }
    keys_.push_back(std::move(key));
    items_.push_back(std::move(v));
    return items_.back();
}

Value& Value::push(Value v) {
    if (kind_ != Kind::Array) throw std::logic_error("json: push on non-array");
    items_.push_back(std::move(v));
    return items_.back();
}

std::string Value::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

void Value::dump_to(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::Null: out += "null"; return;
        case Kind::Bool:
        case Kind::Number:
        case Kind::String: out += scalar_; return;
        case Kind::Array:
        case Kind::Object: break;
    }
    const bool object = kind_ == Kind::Object;
    if (items_.empty()) {
        out += object ? "{}" : "[]";
        return;
    }
    // Arrays of scalars stay on one line.
    const bool flat = !object && std::all_of(items_.begin(), items_.end(), [](const Value& v) {
        return v.kind_ != Kind::Array && v.kind_ != Kind::Object;
    });
    out += object ? '{' : '[';
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i > 0) out += flat ? ", " : ",";
        if (!flat) {
            out += '\n';
            out += pad;
        }
        if (object) {
            out += quote(keys_[i]);
            out += ": ";
        }
        items_[i].dump_to(out, indent, depth + 1);
    }
    if (!flat) {
        out += '\n';
        out += std::string(static_cast<std::size_t>(indent * depth), ' ');
    }
    out += object ? '}' : ']';
}

Value seconds(double v) { return Value::fixed(v, 2); }
Value seconds(const std::optional<double>& v) { return v ? seconds(*v) : Value::null(); }
Value db(double v) { return Value::fixed(v, 2); }
Value km(double v) { return Value::fixed(v, 2); }
Value percent(double v) { return Value::fixed(v, 2); }
Value fraction(double v) { return Value::fixed(v, 6); }

Value bps(double v) {
    if (!std::isfinite(v)) throw ComputeError("non-finite value in report");
    return Value::integer(std::llround(v));
}

Value string_array(const std::vector<std::string>& items) {
    Value a = Value::array();
    for (const auto& s : items) a.push(Value::string(s));
    return a;
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    out += fmt::format("\\u{:04x}", c);
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
    return out;
}

}  // namespace sipsim::json
