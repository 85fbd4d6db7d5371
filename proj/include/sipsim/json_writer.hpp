#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sipsim::json {

// Ordered JSON tree whose numbers are formatted when they are inserted, so the
// serialized bytes depend only on the values and the insertion order.
class Value {
public:
    enum class Kind { Null, Bool, Number, String, Array, Object };

    Value() = default;

    static Value null() { return Value(); }
    static Value boolean(bool b);
    static Value string(std::string_view s);
    static Value object();
    static Value array();

    // Fixed decimals; -0 prints as 0. Non-finite values throw ComputeError.
    static Value fixed(double v, int decimals);
    static Value integer(std::int64_t v);
    // Shortest representation that round-trips.
    static Value exact(double v);

    Kind kind() const noexcept { return kind_; }

    Value& set(std::string key, Value v);
    Value& push(Value v);

    std::string dump(int indent = 2) const;

private:
    void dump_to(std::string& out, int indent, int depth) const;

    Kind kind_ = Kind::Null;
    std::string scalar_;
    std::vector<Value> items_;
    std::vector<std::string> keys_;
};

Value seconds(double v);
Value seconds(const std::optional<double>& v);
Value db(double v);
Value km(double v);
Value percent(double v);
Value fraction(double v);
Value bps(double v);
Value string_array(const std::vector<std::string>& items);

std::string quote(std::string_view s);

}  // namespace sipsim::json
