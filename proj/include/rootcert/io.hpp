#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rootcert/certify.hpp"
#include "rootcert/diophantine.hpp"
#include "rootcert/repweights.hpp"
#include "rootcert/slprobe.hpp"
#include "rootcert/torus.hpp"

// JSON artifacts. Keys come out sorted (nlohmann's default std::map), exact
// rationals are strings "p/q" or "p", and indices are 0-based.
namespace rootcert::io {

using json = nlohmann::json;

// Malformed or structurally invalid input document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const Rational& q);
json to_json(const Integer& z);
json to_json(const RVec& v);
json to_json(const RMat& m);
template <class Tag>
json to_json(const Coords<Tag>& c) {
    return to_json(c.coords);
}

// Accepts "p/q" strings, integers and floats; floats are snapped to the
// smallest-denominator rational within 1e-9 and flag `snapped`.
Rational rational_from(const json& j, bool* snapped = nullptr);
RVec rvec_from(const json& j, bool* snapped = nullptr);
RMat matrix_from(const json& j);
std::vector<TorusVector> torus_list_from(const json& j, std::size_t n, bool* snapped = nullptr);

// {"kind": "A2"} or {"kind": {"cartan": [[...]]}}.
RootSystem datum_from(const json& j);
json datum_json(const RootSystem& system);

// {"ambient": datum, "split_basis": [...], "subspace": [...]} or a bare
// datum with optional "split" and "subspace".
struct Problem {
    RootSystem ambient;
    std::vector<TorusVector> split_basis;
    Subspace subspace;
    bool has_subspace = false;

    SplitDatum datum() const { return SplitDatum(ambient, split_basis); }
};
Problem problem_from(const json& j);

json parse(const std::string& text);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

json weyl_element_json(const WeylElement& w);
json witness_json(const Witness& w);
json check_json(const CheckResult& c);
json report_json(const VerificationReport& r);

json certificate_json(const DivergenceCertificate& c);
// Rebuilds Weyl elements from their words; the verifier recomputes all
// derived data, so nothing here is trusted.
DivergenceCertificate certificate_from(const json& j);

json factor_report_json(const FactorReport& r);
json decomposition_json(const Decomposition& d);
json almost_split_json(const AlmostSplitResult& r);
json dirichlet_json(const DirichletResult& r);
json rationalization_json(const Rationalization& r);
json rep_json(const WeightRepSpec& spec);
json expansion_json(const ExpansionConstants& e);
json decay_summary_json(const slprobe::DecayTable& t);

}  // namespace rootcert::io
