#include "pipeline.hpp"

#include <sstream>

#include "trihopf/errors.hpp"

namespace trihopf::cli {

using json = nlohmann::ordered_json;

namespace {

const char* verdict(bool pass) { return pass ? "pass" : "fail"; }

json matrix_json(const CycMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

json datum_json(const RunConfig& cfg, const FamilyDatum& d) {
    json out;
    if (cfg.family) out["family"] = to_string(*cfg.family);
    out["group"] = cfg.group;
    out["u"] = d.group().label(d.u.element);
    if (!cfg.weights.empty())
        out["weights"] = cfg.weights;
    else {
        json mats = json::array();
        for (const auto& m : cfg.matrices) mats.push_back(matrix_json(m));
        out["matrices"] = mats;
    }
    out["B"] = matrix_json(d.b.matrix());
    return out;
}

json verification_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json e{{"axiom", c.axiom}, {"status", verdict(c.pass)}};
        if (!c.pass) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    return checks;
}

Outcome run_build(const RunConfig& cfg) {
    const FamilyDatum d = cfg.datum();
    BuildReport br;
    const HopfStructure a = build_A(d, &br);
    Outcome o;
    o.report = {{"command", "build"},
                {"datum", datum_json(cfg, d)},
                {"dim", a.dim},
                {"bar_rule", br.variant_rule},
                {"verification", verification_json(br.verification)},
                {"structure", json::parse(serialize(a))}};
    o.text = serialize(a);
    return o;
}

Outcome run_verify(const RunConfig& cfg) {
    const FamilyDatum d = cfg.datum();
    const HopfStructure a = build_A_unchecked(d, resolved_bar_variant());
    Outcome o;
    std::ostringstream text;
    bool all = true;

    const VerificationReport axioms = verify_hopf(a);
    all = all && axioms.verified();
    text << "axioms: " << verdict(axioms.verified()) << "\n";
    for (const auto& c : axioms.checks) {
        text << "  " << c.axiom << ": " << verdict(c.pass);
        if (!c.pass) text << " (" << c.witness << ")";
        text << "\n";
    }

    const bool oracle = coproduct_oracle_check(d);
    all = all && oracle;
    text << "coproduct oracle: " << verdict(oracle) << "\n";

    SupergroupAlgebra alg(d.rep);
    const bool twist = twist_equation_check(alg.hopf(), twist_element(alg, d.b).j);
    all = all && twist;
    text << "twist equation: " << verdict(twist) << "\n";

    json blocks = json::array();
    bool clifford_pass = true;
    try {
        const CliffordReport cr = verify_clifford_blocks(a, d);
        clifford_pass = cr.all_pass();
        text << "clifford blocks: " << verdict(clifford_pass) << "\n";
        for (const auto& b : cr.blocks) {
            json e{{"coset", d.group().label(b.index.representative)},
                   {"block_dim", b.block_dim},
                   {"form_rank", b.form.rank()},
                   {"status", verdict(b.pass)}};
            text << "  " << d.group().label(b.index.representative) << "<u>: dim " << b.block_dim << ", form rank "
                 << b.form.rank() << ", " << verdict(b.pass);
            if (!b.pass) {
                e["witness"] = b.failure;
                text << " (" << b.failure << ")";
            }
            text << "\n";
            blocks.push_back(std::move(e));
        }
    } catch (const InternalError& e) {
        clifford_pass = false;
        blocks.push_back({{"status", "fail"}, {"witness", e.what()}});
        text << "clifford blocks: fail (" << e.what() << ")\n";
    }
    all = all && clifford_pass;

    o.report = {{"command", "verify"},
                {"datum", datum_json(cfg, d)},
                {"dim", a.dim},
                {"axioms", {{"status", verdict(axioms.verified())}, {"checks", verification_json(axioms)}}},
                {"coproduct_oracle", {{"status", verdict(oracle)}}},
                {"twist_equation", {{"status", verdict(twist)}}},
                {"clifford_blocks", {{"status", verdict(clifford_pass)}, {"blocks", blocks}}},
                {"status", verdict(all)}};
    text << "status: " << verdict(all) << "\n";
    o.text = text.str();
    o.exit_code = all ? kPass : kVerificationFailure;
    return o;
}

Outcome run_invariants(const RunConfig& cfg) {
    const FamilyDatum d = cfg.datum();
    const HopfStructure a = build_A(d);
    const CoalgebraType type = coalgebra_type(d);
    const bool pointed = is_pointed(d);
    std::ostringstream text;

    json cosets_json = json::array();
    text << "coalgebra type:";
    for (std::size_t i = 0; i < type.cosets.size(); ++i) {
        const std::string label = d.group().label(type.cosets[i].representative);
        cosets_json.push_back({{"coset", label}, {"rank", type.ranks[i]}});
        text << " " << label << ":" << type.ranks[i];
    }
    text << "\n";
    json census = json::array();
    text << "grouplikes: " << grouplike_count(a) << "\n";
    text << "pointed: " << (pointed ? "yes" : "no") << "\n";
    text << "skew-primitives:";
    for (const auto& s : skew_primitive_census(a)) {
        census.push_back({{"grouplike", a.labels[s.grouplike]}, {"nontrivial_dim", s.nontrivial_dim}});
        text << " " << a.labels[s.grouplike] << ":" << s.nontrivial_dim;
    }
    text << "\n";

    Outcome o;
    o.report = {{"command", "invariants"},
                {"datum", datum_json(cfg, d)},
                {"dim", a.dim},
                {"coalgebra_type", {{"cosets", cosets_json}, {"multiset", type.multiset()}}},
                {"grouplike_count", grouplike_count(a)},
                {"pointed", pointed},
                {"skew_primitives", census}};
    o.text = text.str();
    return o;
}

json point_json(const ModuliPoint& p) { return json::array({p.l1.to_string(), p.l2.to_string(), p.l3.to_string()}); }

Outcome run_moduli(const RunConfig& cfg) {
    if (cfg.lambdas.empty()) throw ParseError("moduli: no lambda triples given (use --lambda or 'lambdas')", 0);
    std::ostringstream text;
    json points = json::array();
    for (const auto& p : cfg.lambdas) {
        const auto inv = moduli_invariant(p);
        const ModuliPoint c = canonical_form(p);
        points.push_back({{"lambda", point_json(p)},
                          {"canonical", point_json(c)},
                          {"invariant", inv ? json(inv->to_string()) : json(nullptr)}});
        text << to_string(p) << ": canonical " << to_string(c) << ", invariant "
             << (inv ? inv->to_string() : std::string("undefined")) << "\n";
    }
    json pairs = json::array();
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.lambdas.size(); ++j) {
            std::string v;
            if (cfg.family) {
                v = moduli_equivalent(cfg.lambdas[i], cfg.lambdas[j], *cfg.family).equivalent ? "equivalent" : "distinct";
            } else {
                RunConfig one = cfg;
                one.lambdas = {cfg.lambdas[i]};
                const FamilyDatum a = one.datum();
                one.lambdas = {cfg.lambdas[j]};
                v = to_string(compare_by_invariants(a, one.datum()));
            }
            pairs.push_back({{"first", i}, {"second", j}, {"verdict", v}});
            text << to_string(cfg.lambdas[i]) << " vs " << to_string(cfg.lambdas[j]) << ": " << v << "\n";
        }
    Outcome o;
    o.report = {{"command", "moduli"},
                {"family", cfg.family ? json(to_string(*cfg.family)) : json(nullptr)},
                {"points", points},
                {"pairs", pairs}};
    o.text = text.str();
    return o;
}

Outcome run_cohomology(const RunConfig& cfg) {
    const Representation rep = cfg.representation();
    const HopfStructure h = build_supergroup_hopf(rep);
    const auto table = cohomology_table(h, rep, cfg.max_degree, cfg.capacity);
    std::ostringstream text;
    text << "degree  bar-complex  (S^iV*)^G\n";
    json rows = json::array();
    bool all = true;
    for (const auto& r : table) {
        all = all && r.agree();
        rows.push_back({{"degree", r.degree},
                        {"bar_complex", r.bar_complex},
                        {"invariants", r.invariants},
                        {"status", verdict(r.agree())}});
        text << r.degree << "       " << r.bar_complex << "            " << r.invariants << "  " << verdict(r.agree())
             << "\n";
    }
    text << "status: " << verdict(all) << "\n";
    Outcome o;
    o.report = {{"command", "cohomology"},
                {"group", cfg.group},
                {"algebra_dim", h.dim},
                {"max_degree", cfg.max_degree},
                {"table", rows},
                {"status", verdict(all)}};
    o.text = text.str();
    o.exit_code = all ? kPass : kVerificationFailure;
    return o;
}

}  // namespace

Outcome run(const RunConfig& cfg) {
    if (cfg.command == "build") return run_build(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "invariants") return run_invariants(cfg);
    if (cfg.command == "moduli") return run_moduli(cfg);
    if (cfg.command == "cohomology") return run_cohomology(cfg);
    throw ParseError("unknown command '" + cfg.command + "'", 0);
}

}  // namespace trihopf::cli
