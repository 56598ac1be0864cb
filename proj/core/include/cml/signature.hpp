#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cml/errors.hpp"

namespace cml {

// A variable's value: integer or string, ordered by its position in the
// declared range, never by its own content.
using Value = std::variant<long long, std::string>;

std::string value_str(const Value& v);

// Finite signature: an ordered list of variables with finite ordered ranges.
// The declared orders fix the canonical enumeration of assignments and every
// downstream indexing.
class Signature {
  public:
    Signature() = default;
    Signature(std::vector<std::string> variables, std::vector<std::vector<Value>> ranges);

    size_t var_count() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& var_name(int v) const { return vars_[v]; }
    const std::vector<Value>& range(int v) const { return ranges_[v]; }
    int range_size(int v) const { return static_cast<int>(ranges_[v].size()); }

    // -1 when absent
    int var_index(const std::string& name) const;
    int value_index(int var, const Value& val) const;

    // |B_sigma|, the number of assignments; throws GuardError beyond 2^62.
    long long state_count() const;

    bool operator==(const Signature& o) const { return vars_ == o.vars_ && ranges_ == o.ranges_; }
    bool operator!=(const Signature& o) const { return !(*this == o); }

  private:
    std::vector<std::string> vars_;
    std::vector<std::vector<Value>> ranges_;
};

// Total assignment, stored as value indices parallel to the signature's
// variable order.
struct Assignment {
    std::vector<int> vals;

    bool operator==(const Assignment& o) const { return vals == o.vals; }
    bool operator<(const Assignment& o) const { return vals < o.vals; }
};

// Canonical lexicographic enumeration s_1,...,s_n (first variable most
// significant, values in range order).
std::vector<Assignment> enumerate_assignments(const Signature& sig);

// Position of an assignment in the canonical enumeration (0-based).
long long state_index(const Signature& sig, const Assignment& a);
Assignment assignment_at(const Signature& sig, long long index);

std::string assignment_str(const Signature& sig, const Assignment& a);

} // namespace cml
