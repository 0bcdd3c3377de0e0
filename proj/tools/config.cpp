#include "config.hpp"

#include "json.hpp"
#include "trihopf/errors.hpp"

namespace trihopf::cli {

using json = nlohmann::ordered_json;

namespace {

struct Reader {
    std::string source;

    [[noreturn]] void fail(const std::string& path, const std::string& msg, std::size_t pos = 0) const {
        throw ParseError(source + ": " + path + ": " + msg, pos);
    }

    CycScalar scalar(const json& v, const std::string& path) const {
        if (v.is_number_integer()) return CycScalar(Rational(v.get<long>()));
        if (!v.is_string()) fail(path, "expected a scalar string or integer");
        try {
            return parse_scalar(v.get<std::string>());
        } catch (const ParseError& e) {
            fail(path, std::string("bad scalar '") + v.get<std::string>() + "'", e.position());
        }
    }

    long integer(const json& v, const std::string& path) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        return v.get<long>();
    }

    std::vector<long> integers(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array of integers");
        std::vector<long> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    CycMatrix matrix(const json& v, const std::string& path) const {
        if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
        const std::size_t n = v.size();
        CycMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const std::string row = path + "[" + std::to_string(i) + "]";
            if (!v[i].is_array() || v[i].size() != n) fail(row, "expected " + std::to_string(n) + " entries");
            for (std::size_t j = 0; j < n; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    scalar(v[i][j], row + "[" + std::to_string(j) + "]");
        }
        return m;
    }

    ModuliPoint lambda(const json& v, const std::string& path) const {
        if (!v.is_array() || v.size() != 3) fail(path, "expected three lifting parameters");
        return {scalar(v[0], path + "[0]"), scalar(v[1], path + "[1]"), scalar(v[2], path + "[2]")};
    }
};

}  // namespace

void merge_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": malformed JSON: " + e.what(), e.byte);
    }
    const Reader r{source};
    if (!doc.is_object()) r.fail("$", "expected an object");
    static const std::vector<std::string> known = {"group", "u", "weights", "matrices", "B", "lambda", "lambdas",
                                                   "family", "max_degree", "capacity"};
    for (const auto& [key, value] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) r.fail(key, "unknown key");

    if (doc.contains("group")) {
        cfg.group.clear();
        for (long f : r.integers(doc["group"], "group")) {
            if (f < 1 || f > 4096) r.fail("group", "cyclic factor out of range");
            cfg.group.push_back(static_cast<int>(f));
        }
    }
    if (doc.contains("u")) cfg.u = r.integers(doc["u"], "u");
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        if (!w.is_array()) r.fail("weights", "expected an array of weight vectors");
        cfg.weights.clear();
        for (std::size_t i = 0; i < w.size(); ++i) cfg.weights.push_back(r.integers(w[i], "weights[" + std::to_string(i) + "]"));
    }
    if (doc.contains("matrices")) {
        const json& m = doc["matrices"];
        if (!m.is_array()) r.fail("matrices", "expected one matrix per generator");
        cfg.matrices.clear();
        for (std::size_t i = 0; i < m.size(); ++i) cfg.matrices.push_back(r.matrix(m[i], "matrices[" + std::to_string(i) + "]"));
    }
    if (doc.contains("B")) cfg.b = r.matrix(doc["B"], "B");
    if (doc.contains("lambda")) cfg.lambdas.push_back(r.lambda(doc["lambda"], "lambda"));
    if (doc.contains("lambdas")) {
        const json& l = doc["lambdas"];
        if (!l.is_array()) r.fail("lambdas", "expected an array of triples");
        for (std::size_t i = 0; i < l.size(); ++i) cfg.lambdas.push_back(r.lambda(l[i], "lambdas[" + std::to_string(i) + "]"));
    }
    if (doc.contains("family")) {
        if (!doc["family"].is_string()) r.fail("family", "expected a preset name");
        try {
            cfg.family = parse_family(doc["family"].get<std::string>());
        } catch (const DomainError& e) {
            r.fail("family", e.what());
        }
    }
    if (doc.contains("max_degree")) {
        const long d = r.integer(doc["max_degree"], "max_degree");
        if (d < 0 || d > 16) r.fail("max_degree", "out of range");
        cfg.max_degree = static_cast<int>(d);
    }
    if (doc.contains("capacity")) {
        const long c = r.integer(doc["capacity"], "capacity");
        if (c < 1) r.fail("capacity", "must be positive");
        cfg.capacity = static_cast<std::size_t>(c);
    }
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    Family f;
    try {
        f = parse_family(name);
    } catch (const DomainError& e) {
        throw ParseError(std::string("--preset: ") + e.what(), 0);
    }
    cfg.family = f;
    cfg.matrices.clear();
    switch (f) {
        case Family::Case1:
            cfg.group = {8}, cfg.weights = {{1}, {3}}, cfg.u = {4};
            break;
        case Family::Case2:
            cfg.group = {8}, cfg.weights = {{1}, {5}}, cfg.u = {4};
            break;
        case Family::Case3:
            cfg.group = {4, 2}, cfg.weights = {{1, 0}, {1, 1}}, cfg.u = {2, 0};
            break;
    }
}

ModuliPoint parse_lambda(const std::string& text) {
    std::vector<CycScalar> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            parts.push_back(parse_scalar(piece));
        } catch (const ParseError& e) {
            throw ParseError("--lambda '" + text + "': bad scalar '" + piece + "'", start + e.position());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) throw ParseError("--lambda '" + text + "': expected three comma-separated values", 0);
    return {parts[0], parts[1], parts[2]};
}

Representation RunConfig::representation() const {
    if (group.empty()) throw ParseError("config: no group given (use --preset or a 'group' key)", 0);
    auto g = build_group(group);
    if (!weights.empty()) return build_character_rep(g, weights);
    if (!matrices.empty()) {
        if (matrices.size() != group.size())
            throw ParseError("config: matrices: expected one matrix per cyclic factor", 0);
        return Representation::from_generators(g, matrices);
    }
    throw ParseError("config: no representation given (use 'weights' or 'matrices')", 0);
}

FamilyDatum RunConfig::datum() const {
    Representation rep = representation();
    if (u.empty()) throw ParseError("config: no central involution given ('u')", 0);
    const std::size_t ue = rep.group().element(u);
    SymTensor bt = SymTensor::zero(rep.dim());
    if (b) {
        bt = SymTensor(*b);
    } else if (!lambdas.empty()) {
        if (lambdas.size() != 1) throw ParseError("config: this command takes a single lambda triple", 0);
        if (rep.dim() != 2) throw DomainError("lambda parameters need dim V = 2");
        bt = lifting_to_B(lambdas.front());
    }
    return make_family_datum(std::move(rep), ue, std::move(bt));
}

}  // namespace trihopf::cli
