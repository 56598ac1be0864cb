#include "cml/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cml/errors.hpp"

namespace cml {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON in " + what);
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Value value_from_json(const json& j) {
    if (j.is_number_integer()) return Value(j.get<long long>());
    if (j.is_string()) return Value(j.get<std::string>());
    throw InputError("values must be integers or strings");
}

json value_to_json(const Value& v) {
    if (std::holds_alternative<long long>(v)) return json(std::get<long long>(v));
    return json(std::get<std::string>(v));
}

Signature signature_from_json(const json& root) {
    const json& j = root.contains("signature") ? root.at("signature") : root;
    if (!j.contains("order") || !j.contains("ranges"))
        throw InputError("signature needs \"order\" and \"ranges\"");
    std::vector<std::string> order;
    for (const auto& v : j.at("order")) order.push_back(v.get<std::string>());
    std::vector<std::vector<Value>> ranges;
    for (const auto& name : order) {
        if (!j.at("ranges").contains(name))
            throw InputError("no range declared for variable " + name);
        std::vector<Value> range;
        for (const auto& v : j.at("ranges").at(name)) range.push_back(value_from_json(v));
        ranges.push_back(std::move(range));
    }
    return Signature(std::move(order), std::move(ranges));
}

FunctionTable table_from_json(const Signature& sig, int var, const json& j) {
    if (!j.contains("args") || !j.contains("table"))
        throw InputError("function for " + sig.var_name(var) + " needs \"args\" and \"table\"");
    std::vector<int> args;
    std::set<int> arg_set;
    for (const auto& a : j.at("args")) {
        int u = sig.var_index(a.get<std::string>());
        if (u < 0) throw InputError("function argument is not a variable: " + a.get<std::string>());
        if (u == var)
            throw InputError("function for " + sig.var_name(var) + " lists itself as argument");
        if (!arg_set.insert(u).second)
            throw InputError("function for " + sig.var_name(var) + " repeats an argument");
        args.push_back(u);
    }

    // declared-argument tuples -> output, then extended to the maximal table
    std::map<std::vector<int>, int> rows;
    for (const auto& entry : j.at("table")) {
        if (!entry.contains("in") || !entry.contains("out"))
            throw InputError("table entries need \"in\" and \"out\"");
        std::vector<int> key;
        for (int u : args) {
            const std::string& name = sig.var_name(u);
            if (!entry.at("in").contains(name))
                throw InputError("table entry for " + sig.var_name(var) + " misses argument " +
                                 name);
            int vi = sig.value_index(u, value_from_json(entry.at("in").at(name)));
            if (vi < 0)
                throw InputError("table entry for " + sig.var_name(var) +
                                 " has an out-of-range value for " + name);
            key.push_back(vi);
        }
        int out = sig.value_index(var, value_from_json(entry.at("out")));
        if (out < 0)
            throw InputError("table output outside the range of " + sig.var_name(var));
        if (!rows.emplace(key, out).second)
            throw InputError("duplicate table entry for " + sig.var_name(var));
    }

    long long expect = 1;
    for (int u : args) expect *= sig.range_size(u);
    if (static_cast<long long>(rows.size()) != expect)
        throw InputError("table for " + sig.var_name(var) + " is not total over its arguments");

    FunctionTable t;
    t.var = var;
    long long dom = wv_domain_size(sig, var);
    t.outputs.assign(static_cast<size_t>(dom), 0);
    Assignment a;
    a.vals.assign(sig.var_count(), 0);
    for (long long code = 0; code < dom; ++code) {
        wv_decode(sig, var, code, a);
        std::vector<int> key;
        for (int u : args) key.push_back(a.vals[u]);
        t.outputs[static_cast<size_t>(code)] = rows.at(key);
    }
    return t;
}

} // namespace

Signature load_signature_string(const std::string& text) {
    return signature_from_json(parse_json(text, "signature"));
}

Signature load_signature_file(const std::string& path) {
    return load_signature_string(slurp(path));
}

CausalMultiteam load_model_string(const std::string& text) {
    json j = parse_json(text, "model");
    Signature sig = signature_from_json(j);
    auto shared_sig = std::make_shared<const Signature>(std::move(sig));

    CausalMultiteam m;
    m.sig = shared_sig;

    if (j.contains("functions"))
        for (auto it = j.at("functions").begin(); it != j.at("functions").end(); ++it) {
            int var = shared_sig->var_index(it.key());
            if (var < 0) throw InputError("function declared for unknown variable " + it.key());
            m.laws.add(table_from_json(*shared_sig, var, it.value()));
        }

    if (j.contains("rows"))
        for (const auto& row : j.at("rows")) {
            if (!row.contains("values")) throw InputError("row without \"values\"");
            Assignment a;
            a.vals.assign(shared_sig->var_count(), -1);
            for (size_t v = 0; v < shared_sig->var_count(); ++v) {
                const std::string& name = shared_sig->var_name(static_cast<int>(v));
                if (!row.at("values").contains(name))
                    throw InputError("row misses a value for " + name);
                int vi = shared_sig->value_index(static_cast<int>(v),
                                                 value_from_json(row.at("values").at(name)));
                if (vi < 0) throw InputError("row value outside the range of " + name);
                a.vals[v] = vi;
            }
            long long count = row.contains("count") ? row.at("count").get<long long>() : 1;
            if (count <= 0) throw InputError("row counts must be positive");
            m.team.add(state_index(*shared_sig, a), count);
        }

    auto violations = validate(m);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "invalid model:";
        for (const auto& v : violations) os << "\n  - " << v;
        throw InputError(os.str());
    }
    return m;
}

CausalMultiteam load_model_file(const std::string& path) {
    return load_model_string(slurp(path));
}

std::string model_to_json_string(const CausalMultiteam& m, bool pretty) {
    const Signature& sig = *m.sig;
    json j;
    j["signature"]["order"] = json::array();
    for (const auto& name : sig.variables()) j["signature"]["order"].push_back(name);
    j["signature"]["ranges"] = json::object();
    for (size_t v = 0; v < sig.var_count(); ++v) {
        json range = json::array();
        for (const auto& val : sig.range(static_cast<int>(v))) range.push_back(value_to_json(val));
        j["signature"]["ranges"][sig.var_name(static_cast<int>(v))] = range;
    }

    j["rows"] = json::array();
    for (const auto& [s, c] : m.team.counts) {
        Assignment a = assignment_at(sig, s);
        json row;
        for (size_t v = 0; v < sig.var_count(); ++v)
            row["values"][sig.var_name(static_cast<int>(v))] =
                value_to_json(sig.range(static_cast<int>(v))[a.vals[v]]);
        row["count"] = c;
        j["rows"].push_back(row);
    }

    j["functions"] = json::object();
    for (const auto& t : m.laws.tables) {
        std::vector<int> pa = parents(sig, m.laws, t.var);
        json fn;
        fn["args"] = json::array();
        for (int u : pa) fn["args"].push_back(sig.var_name(u));
        fn["table"] = json::array();
        // one entry per parent tuple; dummies pinned to the first range value
        std::vector<int> cur(pa.size(), 0);
        Assignment a;
        a.vals.assign(sig.var_count(), 0);
        for (;;) {
            for (size_t i = 0; i < pa.size(); ++i) a.vals[pa[i]] = cur[i];
            json entry;
            entry["in"] = json::object();
            for (size_t i = 0; i < pa.size(); ++i)
                entry["in"][sig.var_name(pa[i])] = value_to_json(sig.range(pa[i])[cur[i]]);
            entry["out"] = value_to_json(sig.range(t.var)[apply_table(sig, t, a)]);
            fn["table"].push_back(entry);
            size_t i = pa.size();
            while (i > 0 && cur[i - 1] == sig.range_size(pa[i - 1]) - 1) cur[--i] = 0;
            if (i == 0) break;
            ++cur[i - 1];
        }
        j["functions"][sig.var_name(t.var)] = fn;
    }
    return pretty ? j.dump(2) : j.dump();
}

namespace {

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw InputError("rationals must be strings like \"1/3\" or integers");
}

Cmp cmp_from_string(const std::string& s) {
    if (s == ">=") return Cmp::Ge;
    if (s == ">") return Cmp::Gt;
    if (s == "<=") return Cmp::Le;
    if (s == "<") return Cmp::Lt;
    throw InputError("inequality comparator must be one of >=, >, <=, <");
}

} // namespace

ProbabilitySet load_system_string(const std::string& text) {
    json j = parse_json(text, "inequality system");
    if (!j.contains("n")) throw InputError("inequality file needs \"n\"");
    ProbabilitySet out;
    out.n = j.at("n").get<long long>();
    if (out.n <= 0) throw InputError("inequality file: n must be positive");
    if (j.contains("systems"))
        for (const auto& sys : j.at("systems")) {
            IneqSystem system;
            if (sys.contains("ineqs"))
                for (const auto& e : sys.at("ineqs")) {
                    LinIneq ineq;
                    if (!e.contains("coeffs") || !e.contains("cmp") || !e.contains("b"))
                        throw InputError("inequalities need \"coeffs\", \"cmp\" and \"b\"");
                    for (const auto& c : e.at("coeffs"))
                        ineq.coeffs.push_back(rational_from_json(c));
                    if (static_cast<long long>(ineq.coeffs.size()) != out.n)
                        throw InputError("inequality has wrong coefficient count");
                    ineq.cmp = cmp_from_string(e.at("cmp").get<std::string>());
                    ineq.bound = rational_from_json(e.at("b"));
                    system.ineqs.push_back(std::move(ineq));
                }
            out.systems.push_back(std::move(system));
        }
    return out;
}

ProbabilitySet load_system_file(const std::string& path) {
    return load_system_string(slurp(path));
}

std::string system_to_json_string(const ProbabilitySet& s, bool pretty) {
    json j;
    j["n"] = s.n;
    j["systems"] = json::array();
    for (const auto& sys : s.systems) {
        json js;
        js["ineqs"] = json::array();
        for (const auto& e : sys.ineqs) {
            json je;
            je["coeffs"] = json::array();
            for (const auto& c : e.coeffs) je["coeffs"].push_back(c.str());
            je["cmp"] = cmp_str(e.cmp);
            je["b"] = e.bound.str();
            js["ineqs"].push_back(je);
        }
        j["systems"].push_back(js);
    }
    return pretty ? j.dump(2) : j.dump();
}

} // namespace cml
