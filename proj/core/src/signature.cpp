#include "cml/signature.hpp"

#include <set>
#include <sstream>

namespace cml {

std::string value_str(const Value& v) {
    if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
    return std::get<std::string>(v);
}

Signature::Signature(std::vector<std::string> variables, std::vector<std::vector<Value>> ranges)
    : vars_(std::move(variables)), ranges_(std::move(ranges)) {
    std::vector<std::string> violations;
    if (vars_.size() != ranges_.size())
        throw InputError("signature: variable list and range list differ in length");
    if (vars_.empty()) violations.push_back("no variables declared");
    std::set<std::string> seen;
    for (const auto& name : vars_) {
        if (name.empty()) violations.push_back("empty variable name");
        if (!seen.insert(name).second) violations.push_back("duplicate variable: " + name);
    }
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (ranges_[i].empty()) violations.push_back("empty range for " + vars_[i]);
        std::set<Value> vs;
        for (const auto& v : ranges_[i])
            if (!vs.insert(v).second)
                violations.push_back("duplicate value " + value_str(v) + " in range of " + vars_[i]);
    }
    if (!violations.empty()) {
        std::ostringstream os;
        os << "invalid signature:";
        for (const auto& s : violations) os << " " << s << ";";
        throw InputError(os.str());
    }
}

int Signature::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

int Signature::value_index(int var, const Value& val) const {
    const auto& r = ranges_[var];
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] == val) return static_cast<int>(i);
    return -1;
}

long long Signature::state_count() const {
    long long n = 1;
    for (const auto& r : ranges_) {
        if (n > (1LL << 62) / static_cast<long long>(r.size()))
            throw GuardError("signature state space too large");
        n *= static_cast<long long>(r.size());
    }
    return n;
}

std::vector<Assignment> enumerate_assignments(const Signature& sig) {
    long long n = sig.state_count();
    if (n > 1'000'000) throw GuardError("refusing to materialize more than 1e6 assignments");
    std::vector<Assignment> out;
    out.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) out.push_back(assignment_at(sig, i));
    return out;
}

long long state_index(const Signature& sig, const Assignment& a) {
    long long idx = 0;
    for (size_t v = 0; v < sig.var_count(); ++v)
        idx = idx * sig.range_size(static_cast<int>(v)) + a.vals[v];
    return idx;
}

Assignment assignment_at(const Signature& sig, long long index) {
    size_t m = sig.var_count();
    Assignment a;
    a.vals.assign(m, 0);
    for (size_t v = m; v-- > 0;) {
        int rs = sig.range_size(static_cast<int>(v));
        a.vals[v] = static_cast<int>(index % rs);
        index /= rs;
    }
    return a;
}

std::string assignment_str(const Signature& sig, const Assignment& a) {
    std::ostringstream os;
    os << "(";
    for (size_t v = 0; v < sig.var_count(); ++v) {
        if (v) os << ",";
        os << sig.var_name(static_cast<int>(v)) << "="
           << value_str(sig.range(static_cast<int>(v))[a.vals[v]]);
    }
    os << ")";
    return os.str();
}

} // namespace cml
