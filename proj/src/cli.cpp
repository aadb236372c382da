#include "rootcert/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rootcert/errors.hpp"
#include "rootcert/io.hpp"

namespace rootcert::cli {

namespace {

using io::json;

struct Config {
    std::string input;
    std::string kind;
    std::string output;
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    int verbosity = 0;

    std::string weight, chi, t, x, highest, ray, cert, matrix, summary;
    std::string Q = "10";
    bool dual = false;
    std::size_t n = 3, steps = 7;
    double tmax = 3.0;
};

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw io::ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json read_json(const std::string& path, std::istream& in) { return io::parse(read_text(path, in)); }

RootSystem system_of(const Config& c, std::istream& in) {
    if (!c.kind.empty()) return RootSystem::from_kind(c.kind);
    if (c.input.empty()) throw io::ParseError("need --kind or --input with a root datum");
    return io::problem_from(read_json(c.input, in)).ambient;
}

io::Problem problem_of(const Config& c, std::istream& in) {
    if (c.input.empty()) throw io::ParseError("need --input");
    return io::problem_from(read_json(c.input, in));
}

RVec vector_arg(const std::string& text, std::size_t n, const char* what) {
    RVec v;
    try {
        v = parse_rational_list(text);
    } catch (const std::exception& e) {
        throw io::ParseError(std::string("bad ") + what + ": " + e.what());
    }
    if (v.size() != n)
        throw io::ParseError(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(n));
    return v;
}

slprobe::Matrix matrix_arg(const std::string& text, std::size_t n) {
    slprobe::Matrix m = slprobe::Matrix::identity(n);
    if (text.empty()) return m;
    // rows separated by ';'
    std::vector<std::string> rows;
    std::stringstream ss(text);
    for (std::string r; std::getline(ss, r, ';');) rows.push_back(r);
    if (rows.size() != n) throw io::ParseError("--x needs " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
        const RVec r = vector_arg(rows[i], n, "--x row");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = r[j].get_d();
    }
    return m;
}

json show_system(const RootSystem& sys) {
    json comps = json::array();
    for (std::size_t c = 0; c < sys.components().size(); ++c)
        comps.push_back({{"type", sys.component_type(c)},
                         {"indices", sys.components()[c]},
                         {"highest_root", io::to_json(sys.highest_root(c))}});
    json pos = json::array();
    for (const auto& b : sys.positive_roots()) pos.push_back(io::to_json(b));
    WeylGroup weyl(sys);
    return {{"datum", io::datum_json(sys)},
            {"label", sys.label()},
            {"rank", sys.rank()},
            {"cartan", io::to_json(sys.cartan())},
            {"inner_form", io::to_json(sys.inner_form())},
            {"fundamental_in_roots", io::to_json(sys.fundamental_in_roots())},
            {"positive_roots", pos},
            {"components", comps},
            {"rho", io::to_json(sys.rho())},
            {"weyl_order", io::to_json(weyl.order())}};
}

class Runner {
public:
    Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int dispatch(const std::string& group, const std::string& cmd, const Config& c) {
        cfg_ = &c;
        if (group == "rootsys") return emit(show_system(system_of(c, in_)));
        if (group == "weyl") return weyl(cmd, c);
        if (group == "torus") return torus(cmd, c);
        if (group == "dio") return dio(c);
        if (group == "rep") return rep(cmd, c);
        if (group == "certify") return certify(cmd, c);
        if (group == "probe") return probe(c);
        throw io::ParseError("unknown subcommand " + group);
    }

private:
    int emit(const json& j, int code = kExitOk) { return emit_text(io::dump(j), code); }

    int emit_text(const std::string& text, int code = kExitOk) {
        if (cfg_->output.empty()) {
            out_ << text;
        } else {
            std::ofstream f(cfg_->output, std::ios::binary);
            if (!f) throw io::ParseError("cannot write " + cfg_->output);
            f << text;
            // a failing verification still prints its witness on stdout
            if (code == kExitFailedVerification) out_ << text;
        }
        return code;
    }

    int weyl(const std::string& cmd, const Config& c) {
        const WeylGroup w(system_of(c, in_));
        const std::size_t n = w.system().rank();
        if (cmd == "orbit") {
            const auto orb = w.orbit(Weight(vector_arg(c.weight, n, "--weight")));
            json a = json::array();
            for (const auto& x : orb) a.push_back(io::to_json(x));
            return emit({{"orbit", a}, {"size", orb.size()}});
        }
        if (cmd == "dominate") {
            const auto [dom, el] = w.dominate(Weight(vector_arg(c.weight, n, "--weight")));
            return emit({{"dominant", io::to_json(dom)}, {"w", io::weyl_element_json(el)}});
        }
        const auto r = w.one_step(Weight(vector_arg(c.chi, n, "--chi")), TorusVector(vector_arg(c.t, n, "--t")));
        json o = {{"zero", r.zero}};
        if (!r.zero)
            o.update({{"beta", io::to_json(r.beta)},
                      {"word", r.word},
                      {"reflection_word", r.reflection_word},
                      {"reflection", io::weyl_element_json(w.from_word(r.reflection_word))}});
        return emit(o);
    }

    int torus(const std::string& cmd, const Config& c) {
        const auto p = problem_of(c, in_);
        const SplitDatum d = p.datum();
        if (cmd == "decompose") {
            json o = io::decomposition_json(decompose(p.subspace, d));
            o["aniso_basis"] = json::array();
            for (const auto& v : d.aniso_basis()) o["aniso_basis"].push_back(io::to_json(v));
            o["rank_q"] = d.rank_q();
            return emit(o);
        }
        json o = io::almost_split_json(make_almost_split(p.subspace, d));
        o["snapped"] = p.subspace.snapped;
        return emit(o);
    }

    int dio(const Config& c) {
        RVec x;
        try {
            x = parse_rational_list(c.x);
        } catch (const std::exception& e) {
            throw io::ParseError(std::string("bad --x: ") + e.what());
        }
        Integer Q;
        try {
            Q = Integer(c.Q);
        } catch (const std::exception&) {
            throw io::ParseError("bad --Q");
        }
        return emit(io::dirichlet_json(dirichlet(x, Q)));
    }

    int rep(const std::string& cmd, const Config& c) {
        const WeylGroup w(system_of(c, in_));
        if (cmd == "dexp") return emit(io::expansion_json(fundamental_expansion_constants(w.system())));
        const auto spec = saturate(w, Weight(vector_arg(c.highest, w.system().rank(), "--highest")));
        return emit(io::rep_json(c.dual ? dual(*spec) : *spec));
    }

    int certify(const std::string& cmd, const Config& c) {
        if (cmd == "decide") {
            const auto p = problem_of(c, in_);
            return emit(io::factor_report_json(factor_decision(p.datum(), p.subspace)));
        }
        if (cmd == "build") {
            const auto p = problem_of(c, in_);
            if (!p.has_subspace) throw io::ParseError("input has no \"subspace\"");
            const BuildOptions opt{c.trials, c.seed};
            DivergenceCertificate cert;
            if (p.split_basis.empty()) {
                cert = build_certificate(WeylGroup(p.ambient), p.subspace, opt);
            } else {
                cert = build_certificate(p.datum(), p.subspace, opt);
            }
            return emit(io::certificate_json(cert), cert.checks.passed() ? kExitOk : kExitFailedVerification);
        }
        // verify
        if (c.cert.empty()) throw io::ParseError("need --cert");
        const DivergenceCertificate cert = io::certificate_from(read_json(c.cert, in_));
        Subspace a{cert.subspace, false};
        if (!c.input.empty()) {
            const auto p = problem_of(c, in_);
            if (!p.split_basis.empty()) a = relative_subspace(p.datum(), p.subspace);
            else a = p.subspace;
        }
        const WeylGroup weyl(RootSystem::from_cartan(cert.cartan));
        const auto rep = verify_hypotheses(weyl, cert, a, c.trials, c.seed);
        json o = io::report_json(rep);
        if (const auto* f = rep.first_failure()) o["witness"] = f->witness ? io::witness_json(*f->witness) : json::object();
        return emit(o, rep.passed() ? kExitOk : kExitFailedVerification);
    }

    int probe(const Config& c) {
        if (c.cert.empty()) throw io::ParseError("need --cert");
        const DivergenceCertificate cert = io::certificate_from(read_json(c.cert, in_));
        slprobe::ProbeOptions opt;
        opt.t_max = c.tmax;
        opt.steps = c.steps;
        if (!c.ray.empty()) opt.ray = TorusVector(vector_arg(c.ray, c.n - 1, "--ray"));
        const auto tab = slprobe::probe_divergence(cert, matrix_arg(c.x, c.n), opt);
        if (!c.summary.empty()) {
            std::ofstream f(c.summary, std::ios::binary);
            if (!f) throw io::ParseError("cannot write " + c.summary);
            f << io::dump(io::decay_summary_json(tab));
        }
        if (c.verbosity > 0)
            for (const auto& note : tab.notes) err_ << "note: " << note << '\n';
        return emit_text(tab.csv(), tab.passed() ? kExitOk : kExitFailedVerification);
    }

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
    const Config* cfg_ = nullptr;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Root-system divergence certificates"};
    app.require_subcommand(1);
    Config c;

    auto common = [&c](CLI::App* s) {
        s->add_option("-i,--input", c.input, "input JSON file, - for stdin");
        s->add_option("-o,--output", c.output, "write the result here instead of stdout");
        s->add_flag("-v,--verbose", c.verbosity, "more diagnostics on stderr");
    };
    auto datum_opts = [&](CLI::App* s) {
        common(s);
        s->add_option("-k,--kind", c.kind, "root system type such as A2 or A1xB2");
    };

    auto* rootsys = app.add_subcommand("rootsys", "root system data")->require_subcommand(1);
    datum_opts(rootsys->add_subcommand("show", "Cartan matrix, roots, components"));

    auto* weyl = app.add_subcommand("weyl", "Weyl group operations")->require_subcommand(1);
    for (const auto& [name, about] : {std::pair{"orbit", "W-orbit of a weight"},
                                      std::pair{"dominate", "dominant conjugate and a reduced word"}}) {
        auto* s = weyl->add_subcommand(name, about);
        datum_opts(s);
        s->add_option("-w,--weight", c.weight, "weight in fundamental coordinates, e.g. 1,-1/2")->required();
    }
    {
        auto* s = weyl->add_subcommand("onestep", "shortest reflection with s_beta(chi)(t) != 0");
        datum_opts(s);
        s->add_option("--chi", c.chi)->required();
        s->add_option("--t", c.t)->required();
    }

    auto* torus = app.add_subcommand("torus", "split/anisotropic decomposition")->require_subcommand(1);
    common(torus->add_subcommand("decompose", "split and anisotropic parts of A"));
    common(torus->add_subcommand("splitify", "conjugate to almost split form"));

    auto* dio = app.add_subcommand("dio", "simultaneous approximation")->require_subcommand(1);
    {
        auto* s = dio->add_subcommand("approx", "common denominator q <= Q^d with small error");
        common(s);
        s->add_option("--x", c.x, "comma separated reals")->required();
        s->add_option("--Q", c.Q, "Dirichlet parameter, at least 2");
    }

    auto* rep = app.add_subcommand("rep", "weight data of highest-weight modules")->require_subcommand(1);
    {
        auto* s = rep->add_subcommand("saturate", "weight set of the module with given extreme weight");
        datum_opts(s);
        s->add_option("--highest", c.highest)->required();
        s->add_flag("--dual", c.dual, "negate weights (lowest-weight form)");
        datum_opts(rep->add_subcommand("dexp", "expansion constants of the fundamental weights"));
    }

    auto* cert = app.add_subcommand("certify", "divergence certificates")->require_subcommand(1);
    for (const auto& [name, about] : {std::pair{"build", "build a certificate for a problem"},
                                      std::pair{"verify", "recheck a certificate; exit 2 on failure"},
                                      std::pair{"decide", "factor-by-factor divergence verdict"}}) {
        auto* s = cert->add_subcommand(name, about);
        common(s);
        s->add_option("--seed", c.seed, "seed for randomized direction trials");
        s->add_option("--trials", c.trials, "number of direction trials");
        if (std::string(name) == "verify") s->add_option("--cert", c.cert, "certificate JSON")->required();
    }

    auto* probe = app.add_subcommand("probe", "SL_n shortest-vector probe")->require_subcommand(1);
    {
        auto* s = probe->add_subcommand("run", "CSV of tracked norms and systoles along the ray");
        common(s);
        s->add_option("--n", c.n)->check(CLI::Range(2, 5));
        s->add_option("--cert", c.cert)->required();
        s->add_option("--tmax", c.tmax);
        s->add_option("--steps", c.steps);
        s->add_option("--x", c.x, "unimodular matrix, rows separated by ';'");
        s->add_option("--ray", c.ray, "override the certificate ray");
        s->add_option("--summary", c.summary, "write a JSON summary of the decay checks");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    const CLI::App* group = app.get_subcommands().front();
    const CLI::App* leaf = group->get_subcommands().front();
    try {
        Runner r(in, out, err);
        return r.dispatch(group->get_name(), leaf->get_name(), c);
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << '\n';
    } catch (const InvariantError& e) {
        err << "invariant violated: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

}  // namespace rootcert::cli
