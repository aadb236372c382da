#include "rootcert/io.hpp"

#include "rootcert/errors.hpp"

namespace rootcert::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t index_from(const json& j) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError("expected a non-negative index, got " + j.dump());
    return j.get<std::size_t>();
}

std::vector<std::size_t> indices_from(const json& j) {
    if (!j.is_array()) throw ParseError("expected an index array");
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(index_from(x));
    return out;
}

Integer integer_from(const json& j) {
    const Rational q = rational_from(j);
    if (q.get_den() != 1) throw ParseError("expected an integer, got " + to_string(q));
    return q.get_num();
}

std::vector<Integer> integers_from(const json& j) {
    if (!j.is_array()) throw ParseError("expected an integer array");
    std::vector<Integer> out;
    for (const auto& x : j) out.push_back(integer_from(x));
    return out;
}

json integers_json(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

template <class T>
json list_json(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

template <class C>
std::vector<C> coords_list_from(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of vectors");
    std::vector<C> out;
    for (const auto& x : j) out.emplace_back(rvec_from(x));
    return out;
}

WeylElement weyl_element_from(const WeylGroup& weyl, const json& j) {
    WeylElement w = weyl.from_word(indices_from(field(j, "word")));
    if (j.contains("matrix")) w.matrix = matrix_from(j.at("matrix"));
    return w;
}

json status_json(CheckStatus s) { return to_string(s); }

CheckStatus status_from(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "PASSED") return CheckStatus::PASSED;
    if (s == "FAILED") return CheckStatus::FAILED;
    if (s == "DELEGATED") return CheckStatus::DELEGATED;
    throw ParseError("unknown check status " + s);
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& z) { return to_string(z); }
json to_json(const RVec& v) { return list_json(v); }

json to_json(const RMat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Rational rational_from(const json& j, bool* snapped) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
        if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
        if (j.is_number_float()) {
            if (snapped) *snapped = true;
            return snap(j.get<double>(), 1e-9);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError("bad rational " + j.dump() + ": " + e.what());
    }
    throw ParseError("expected a rational, got " + j.dump());
}

RVec rvec_from(const json& j, bool* snapped) {
    if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
    RVec v;
    for (const auto& x : j) v.push_back(rational_from(x, snapped));
    return v;
}

RMat matrix_from(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix");
    std::vector<RVec> rows;
    for (const auto& r : j) {
        rows.push_back(rvec_from(r));
        if (rows.back().size() != rows.front().size()) throw ParseError("ragged matrix");
    }
    return RMat::from_rows(rows);
}

std::vector<TorusVector> torus_list_from(const json& j, std::size_t n, bool* snapped) {
    if (!j.is_array()) throw ParseError("expected an array of torus vectors");
    std::vector<TorusVector> out;
    for (const auto& x : j) {
        out.emplace_back(rvec_from(x, snapped));
        if (out.back().size() != n)
            throw ParseError("torus vector has " + std::to_string(out.back().size()) + " coordinates, expected " +
                             std::to_string(n));
    }
    return out;
}

RootSystem datum_from(const json& j) {
    const json& kind = field(j, "kind");
    if (kind.is_string()) return RootSystem::from_kind(kind.get<std::string>());
    if (kind.is_object()) return RootSystem::from_cartan(matrix_from(field(kind, "cartan")));
    throw ParseError("\"kind\" must be a type string or {\"cartan\": ...}");
}

json datum_json(const RootSystem& system) {
    try {
        if (RootSystem::from_kind(system.label()).cartan() == system.cartan()) return {{"kind", system.label()}};
    } catch (const std::exception&) {
    }
    return {{"kind", {{"cartan", to_json(system.cartan())}}}};
}

Problem problem_from(const json& j) {
    if (!j.is_object()) throw ParseError("input must be a JSON object");
    const bool wrapped = j.contains("ambient");
    const json& d = wrapped ? j.at("ambient") : j;
    Problem p{datum_from(d), {}, {}, false};
    const std::size_t n = p.ambient.rank();
    if (wrapped && j.contains("split_basis")) p.split_basis = torus_list_from(j.at("split_basis"), n);
    else if (d.contains("split")) p.split_basis = torus_list_from(d.at("split"), n);
    if (j.contains("subspace")) {
        p.subspace.basis = torus_list_from(j.at("subspace"), n, &p.subspace.snapped);
        p.has_subspace = true;
    }
    return p;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json weyl_element_json(const WeylElement& w) {
    return {{"word", w.word}, {"matrix", to_json(w.matrix)}, {"length", w.length()}};
}

json witness_json(const Witness& w) {
    json o = json::object();
    if (w.t) o["t"] = to_json(*w.t);
    if (w.l) o["l"] = *w.l;
    if (w.beta) o["beta"] = to_json(*w.beta);
    return o;
}

json check_json(const CheckResult& c) {
    json o = {{"name", c.name}, {"status", status_json(c.status)}, {"detail", c.detail}};
    if (c.witness) o["witness"] = witness_json(*c.witness);
    return o;
}

json report_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    json o = {{"checks", checks},
              {"trials", r.trials},
              {"seed", r.seed},
              {"failures", r.failures()},
              {"passed", r.passed()}};
    if (const auto* f = r.first_failure()) o["first_failure"] = check_json(*f);
    return o;
}

json certificate_json(const DivergenceCertificate& c) {
    json per = json::array();
    for (const auto& iw : c.per_index)
        per.push_back({{"index", iw.index},
                       {"plus", to_json(iw.plus)},
                       {"plus_dominant", to_json(iw.plus_dominant)},
                       {"w", weyl_element_json(iw.w)},
                       {"minus", to_json(iw.minus)},
                       {"minus_lowest", to_json(iw.minus_lowest)},
                       {"m_plus", to_json(iw.m_plus)},
                       {"m_minus", to_json(iw.m_minus)}});
    return {{"system", c.system_label},
            {"cartan", to_json(c.cartan)},
            {"subspace", list_json(c.subspace)},
            {"frame_subspace", list_json(c.frame_subspace)},
            {"chi_real", to_json(c.chi_real)},
            {"dominance_w", weyl_element_json(c.dominance_w)},
            {"chi_dominant", to_json(c.chi_dominant)},
            {"kept_components", c.kept_components},
            {"dropped_components", c.dropped_components},
            {"kept_indices", c.kept_indices},
            {"R", to_json(c.R)},
            {"tolerance", to_json(c.tolerance)},
            {"p", integers_json(c.p)},
            {"dirichlet_scale", to_json(c.dirichlet_scale)},
            {"Q", to_json(c.Q)},
            {"chi_unscaled", to_json(c.chi_unscaled)},
            {"d", to_json(c.d)},
            {"m", to_json(c.m)},
            {"chi_prime", to_json(c.chi_prime)},
            {"max_pairing", to_json(c.max_pairing)},
            {"pivots", c.pivots},
            {"psi", list_json(c.psi)},
            {"per_index", per},
            {"report", report_json(c.checks)}};
}

DivergenceCertificate certificate_from(const json& j) {
    DivergenceCertificate c;
    try {
        c.system_label = field(j, "system").get<std::string>();
        c.cartan = matrix_from(field(j, "cartan"));
        const RootSystem sys = RootSystem::from_cartan(c.cartan);
        const WeylGroup weyl(sys);
        const std::size_t n = sys.rank();
        c.subspace = torus_list_from(field(j, "subspace"), n);
        c.frame_subspace = torus_list_from(field(j, "frame_subspace"), n);
        c.chi_real = Weight(rvec_from(field(j, "chi_real")));
        c.dominance_w = weyl_element_from(weyl, field(j, "dominance_w"));
        c.chi_dominant = Weight(rvec_from(field(j, "chi_dominant")));
        c.kept_components = indices_from(field(j, "kept_components"));
        c.dropped_components = indices_from(field(j, "dropped_components"));
        c.kept_indices = indices_from(field(j, "kept_indices"));
        c.R = rational_from(field(j, "R"));
        c.tolerance = rational_from(field(j, "tolerance"));
        c.p = integers_from(field(j, "p"));
        c.dirichlet_scale = integer_from(field(j, "dirichlet_scale"));
        c.Q = integer_from(field(j, "Q"));
        c.chi_unscaled = Weight(rvec_from(field(j, "chi_unscaled")));
        c.d = RootVector(rvec_from(field(j, "d")));
        c.m = integer_from(field(j, "m"));
        c.chi_prime = Weight(rvec_from(field(j, "chi_prime")));
        c.max_pairing = rational_from(field(j, "max_pairing"));
        c.pivots = indices_from(field(j, "pivots"));
        c.psi = coords_list_from<RootVector>(field(j, "psi"));
        for (const auto& e : field(j, "per_index")) {
            IndexWeights iw;
            iw.index = index_from(field(e, "index"));
            iw.plus = Weight(rvec_from(field(e, "plus")));
            iw.plus_dominant = Weight(rvec_from(field(e, "plus_dominant")));
            iw.w = weyl_element_from(weyl, field(e, "w"));
            iw.minus = Weight(rvec_from(field(e, "minus")));
            iw.minus_lowest = Weight(rvec_from(field(e, "minus_lowest")));
            iw.m_plus = integer_from(field(e, "m_plus"));
            iw.m_minus = integer_from(field(e, "m_minus"));
            c.per_index.push_back(std::move(iw));
        }
        if (j.contains("report")) {
            const json& r = j.at("report");
            c.checks.trials = field(r, "trials").get<std::size_t>();
            c.checks.seed = field(r, "seed").get<std::uint64_t>();
            for (const auto& e : field(r, "checks"))
                c.checks.checks.push_back({field(e, "name").get<std::string>(), status_from(field(e, "status")),
                                           field(e, "detail").get<std::string>(), std::nullopt});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad certificate: ") + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("bad certificate: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("bad certificate: ") + e.what());
    }
    return c;
}

json factor_report_json(const FactorReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"index", c.index}, {"type", c.type}, {"rank", c.rank}, {"projection_dim", c.projection_dim}});
    return {{"components", comps},
            {"dim_a", r.dim_a},
            {"rank_q", r.rank_q},
            {"projection_reading", r.projection_reading},
            {"literal_reading", r.literal_reading},
            {"ambiguous", r.ambiguous},
            {"verdict", to_string(r.verdict)},
            {"trace", r.trace}};
}

json decomposition_json(const Decomposition& d) {
    return {{"ani", list_json(d.ani.basis)}, {"spl", list_json(d.spl.basis)}, {"snapped", d.ani.snapped}};
}

json almost_split_json(const AlmostSplitResult& r) {
    json trace = json::array();
    for (const auto& s : r.trace)
        trace.push_back({{"chi", to_json(s.chi)}, {"beta", to_json(s.beta)}, {"new_split_dim", s.new_split_dim}});
    return {{"w", weyl_element_json(r.w)}, {"image", list_json(r.image.basis)}, {"trace", trace}};
}

json dirichlet_json(const DirichletResult& r) {
    return {{"q", to_json(r.q)}, {"p", integers_json(r.p)}, {"Q", to_json(r.Q)}, {"errors", to_json(r.errors)}};
}

json rationalization_json(const Rationalization& r) {
    return {{"p", integers_json(r.p)}, {"scale", to_json(r.scale)}, {"Q", to_json(r.Q)}, {"retries", r.retries}};
}

json rep_json(const WeightRepSpec& spec) {
    return {{"extreme", to_json(spec.extreme)},
            {"lowest", spec.lowest},
            {"weights", list_json(spec.weights)},
            {"count", spec.weights.size()},
            {"extreme_multiplicity_one", spec.extreme_multiplicity_one}};
}

json expansion_json(const ExpansionConstants& e) {
    return {{"gamma", list_json(e.gamma)}, {"d", to_json(e.d)}};
}

json decay_summary_json(const slprobe::DecayTable& t) {
    json weights = json::array();
    for (const auto& w : t.weights)
        weights.push_back({{"index", w.index},
                           {"sign", w.plus ? "plus" : "minus"},
                           {"weight", to_json(w.weight)},
                           {"exponent", w.exponent}});
    return {{"model", "exterior-power"},
            {"n", t.n},
            {"ray", t.ray},
            {"weights", weights},
            {"tracked", t.tracked},
            {"flat", t.flat},
            {"max_exponent_error", t.max_exponent_error},
            {"exponent_ok", t.exponent_ok},
            {"tracked_monotone", t.tracked_monotone},
            {"final_below_initial", t.final_below_initial},
            {"systole_monotone", t.systole_monotone},
            {"passed", t.passed()},
            {"notes", t.notes}};
}

}  // namespace rootcert::io
