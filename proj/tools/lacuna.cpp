// lacuna: lacunary summability toolkit
//
// Subcommands: gen | analyze | density | compare | membership | counterexample
// Exit codes: 0 = summable/member/stabilized, 1 = negative verdict, 2 = error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lacuna/generators.hpp"
#include "lacuna/io.hpp"
#include "lacuna/series.hpp"
#include "lacuna/summability.hpp"

using namespace lacuna;

namespace {

struct CommonOpts {
    std::string theta_spec;
    std::string norm = "l2";
    std::string format = "json";
    std::string output;
    double tol = 1e-4;
    double delta_tol = 1e-3;
    int window = 5;
    double eps0 = 1e-1;
    double eps_ratio = 0.5;
    int eps_steps = 6;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_theta = true) {
    if (with_theta)
        cmd->add_option("--theta", o.theta_spec,
                        "theta spec: geom:R:B | power:A:B | 0,2,4,... | path.json "
                        "(default: $LACUNA_DEFAULT_THETA)");
    cmd->add_option("--norm", o.norm, "l1 | l2 | linf")->capture_default_str();
    cmd->add_option("--format", o.format, "json | csv | table")->capture_default_str();
    cmd->add_option("--output", o.output, "also write the artifact to this path");
    cmd->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
    cmd->add_option("--delta-tol", o.delta_tol, "density tolerance")->capture_default_str();
    cmd->add_option("--window", o.window, "stabilization window")->capture_default_str();
    cmd->add_option("--eps0", o.eps0, "largest grid epsilon")->capture_default_str();
    cmd->add_option("--eps-ratio", o.eps_ratio, "grid decay ratio")->capture_default_str();
    cmd->add_option("--eps-steps", o.eps_steps, "grid steps")->capture_default_str();
    cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
}

StabilizationPolicy policy_of(const CommonOpts& o) { return {o.window, o.tol}; }

EpsilonGrid grid_of(const CommonOpts& o) {
    return {o.eps0, o.eps_ratio, o.eps_steps, o.delta_tol};
}

LacunarySequence resolve_theta(const CommonOpts& o) {
    std::string spec = o.theta_spec;
    if (spec.empty()) {
        if (const char* env = std::getenv("LACUNA_DEFAULT_THETA")) spec = env;
    }
    if (spec.empty())
        throw Error(Errc::InvalidArgument,
                    "no theta given (use --theta or LACUNA_DEFAULT_THETA)");
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return theta_from_json(json::parse(read_file(spec)));
    return parse_theta_spec(spec);
}

std::optional<Vector> parse_limit(const std::string& text) {
    if (text.empty() || text == "auto") return std::nullopt;
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
    return Vector(std::move(coords));
}

json config_echo(const std::string& command, const CommonOpts& o) {
    return json{{"command", command},
                {"theta", o.theta_spec},
                {"norm", o.norm},
                {"policy", to_json(policy_of(o))},
                {"grid", to_json(grid_of(o))},
                {"seed", o.seed}};
}

void emit(const CommonOpts& o, const std::string& payload) {
    std::cout << payload << "\n";
    if (!o.output.empty()) write_file(o.output, payload + "\n");
}

std::string render_verdict(const SummabilityVerdict& v, const CommonOpts& o,
                           const json& config) {
    if (o.format == "csv") return verdict_csv(v);
    if (o.format == "table") {
        std::ostringstream os;
        os << "method    " << method_name(v.method) << "\n"
           << "summable  " << (v.summable ? "yes" : "no") << "\n";
        if (v.limit) {
            os << "limit     ";
            for (double c : v.limit->coords()) os << c << " ";
            os << "(" << v.limit_source << ")\n";
        }
        if (!v.residuals.empty()) os << "final residual " << v.residuals.back() << "\n";
        return os.str();
    }
    json j = to_json(v);
    j["config"] = config;
    return j.dump(2);
}

int run_analyze(const std::string& input, const std::string& method_name_, double p,
                const std::string& limit_text, const CommonOpts& o) {
    const VectorSequence x = sequence_from_json(json::parse(read_file(input)));
    const Method method = parse_method(method_name_);
    const NormKind nk = parse_norm(o.norm);
    const auto limit = parse_limit(limit_text);
    SummabilityVerdict v;
    switch (method) {
        case Method::Ordinary: v = ordinary_limit(x, nk, policy_of(o)); break;
        case Method::Ntheta: v = ntheta(x, limit, resolve_theta(o), nk, policy_of(o)); break;
        case Method::Stheta:
            v = stheta(x, limit, resolve_theta(o), nk, grid_of(o), policy_of(o));
            break;
        case Method::Sigma1:
        case Method::Wp: {
            std::vector<std::uint64_t> cps;
            if (!o.theta_spec.empty() || std::getenv("LACUNA_DEFAULT_THETA")) {
                const LacunarySequence theta = resolve_theta(o);
                if (x.size() < theta.horizon())
                    throw Error(Errc::HorizonTooShort, "sequence shorter than k_R");
                cps = theta.cutoffs();
            }
            v = wp(x, limit, method == Method::Sigma1 ? 1.0 : p, nk, policy_of(o), cps);
            break;
        }
    }
    json config = config_echo("analyze", o);
    config["input"] = input;
    config["method"] = method_name_;
    config["p"] = p;
    config["limit"] = limit_text.empty() ? "auto" : limit_text;
    emit(o, render_verdict(v, o, config));
    return v.summable ? 0 : 1;
}

int run_density(const std::string& set_spec, const CommonOpts& o) {
    const LacunarySequence theta = resolve_theta(o);
    const IndexSet set = IndexSet::parse(set_spec);
    StabilizationPolicy pol{o.window, o.delta_tol};  // density estimation tolerance
    const DensityTrace trace = theta_density(theta, set, pol);
    if (o.format == "csv") {
        emit(o, density_csv(trace, theta));
    } else {
        json j = to_json(trace);
        j["config"] = config_echo("density", o);
        j["config"]["set"] = set_spec;
        emit(o, j.dump(2));
    }
    return trace.stabilized ? 0 : 1;
}

int run_compare(const std::string& input, const std::vector<std::string>& theta_specs,
                double p, const CommonOpts& o) {
    const VectorSequence x = sequence_from_json(json::parse(read_file(input)));
    const NormKind nk = parse_norm(o.norm);
    std::ostringstream os;
    os << "theta,method,summable,limit,final_residual\n";
    auto limit_text = [](const SummabilityVerdict& v) {
        std::ostringstream s;
        if (v.limit) {
            s.precision(17);
            for (std::size_t j = 0; j < v.limit->dim(); ++j)
                s << (j ? ";" : "") << (*v.limit)[j];
        } else {
            s << "none";
        }
        return s.str();
    };
    auto row = [&](const std::string& tname, const SummabilityVerdict& v) {
        os << tname << "," << method_name(v.method) << "," << (v.summable ? "true" : "false")
           << "," << limit_text(v) << ",";
        os.precision(17);
        if (!v.residuals.empty()) os << v.residuals.back();
        else if (!v.densities.empty()) os << v.densities.front().back();
        os << "\n";
    };
    const SummabilityVerdict ord = ordinary_limit(x, nk, policy_of(o));
    row("-", ord);
    for (const std::string& spec : theta_specs) {
        CommonOpts oo = o;
        oo.theta_spec = spec;
        const LacunarySequence theta = resolve_theta(oo);
        row(spec, sigma1(x, std::nullopt, nk, policy_of(o), theta.cutoffs()));
        row(spec, wp(x, std::nullopt, p, nk, policy_of(o), theta.cutoffs()));
        row(spec, ntheta(x, std::nullopt, theta, nk, policy_of(o)));
        row(spec, stheta(x, std::nullopt, theta, nk, grid_of(o), policy_of(o)));
    }
    emit(o, os.str());
    return 0;
}

int run_membership(const std::string& series_path, const std::string& method_name_, double p,
                   const CommonOpts& o) {
    const SeriesContext ctx = series_from_json(json::parse(read_file(series_path)),
                                               parse_norm(o.norm), policy_of(o));
    MethodSpec spec{parse_method(method_name_), p};
    const SummabilityVerdict v = membership(ctx, spec, resolve_theta(o), grid_of(o), policy_of(o));
    json config = config_echo("membership", o);
    config["series"] = series_path;
    config["method"] = method_name_;
    config["p"] = p;
    json j = to_json(v);
    j["config"] = config;
    j["note"] = std::string("membership verdict is relative to horizon k_R under the policy; ") +
                "no asymptotic claim";
    emit(o, o.format == "csv" ? verdict_csv(v) : j.dump(2));
    return v.summable ? 0 : 1;
}

int run_counterexample(const std::string& functional, int blocks, const std::string& mode,
                       std::uint64_t horizon, const CommonOpts& o) {
    const FunctionalValues fvals = FunctionalValues::parse(functional);
    const CertMode cm = mode == "exact" ? CertMode::Exact : CertMode::Float;
    const CounterexampleResult built = build_counterexample(fvals, blocks, cm, horizon);

    json j = to_json(built, fvals);
    j["config"] = config_echo("counterexample", o);
    j["config"]["functional"] = functional;
    j["config"]["blocks"] = blocks;
    j["config"]["mode"] = mode;
    j["config"]["horizon"] = horizon;

    // form the series a_i * x_i with x_i = f(x_i) * e1 and run the membership battery
    const std::uint64_t n = std::max<std::uint64_t>(built.last_index(), 2);
    std::vector<double> term_values(n);
    for (std::uint64_t i = 1; i <= n; ++i) term_values[i - 1] = fvals.value(i);
    std::vector<double> coeffs(n, 0.0);
    if (built.last_index() > 0) {
        auto cs = built.materialize_coeffs(fvals);
        std::copy(cs.begin(), cs.end(), coeffs.begin());
    }
    SeriesContext ctx(VectorSequence::from_scalars(std::move(term_values), functional),
                      Coefficients::make(CoeffClass::Linf, std::move(coeffs)),
                      parse_norm(o.norm), policy_of(o));

    // largest geometric theta fitting the constructed prefix
    int tb = 1;
    while ((std::uint64_t(1) << (tb + 1)) <= n) ++tb;
    const LacunarySequence theta = LacunarySequence::geometric(2.0, tb);

    bool member = true;
    json verdicts = json::object();
    for (const auto& [name, spec] : std::initializer_list<std::pair<const char*, MethodSpec>>{
             {"stheta", {Method::Stheta, 1.0}},
             {"ntheta", {Method::Ntheta, 1.0}},
             {"wp1", {Method::Wp, 1.0}},
             {"wp2", {Method::Wp, 2.0}}}) {
        const SummabilityVerdict v = membership(ctx, spec, theta, grid_of(o), policy_of(o));
        verdicts[name] = to_json(v);
        member = member && v.summable;
    }
    j["membership"] = std::move(verdicts);

    // divergence witnesses on the scalar partial sums
    const VectorSequence& sums = ctx.partial_sums();
    std::vector<double> s(sums.size());
    for (std::size_t k = 1; k <= sums.size(); ++k) s[k - 1] = sums.at(k)[0];
    const bool monotone = std::is_sorted(s.begin(), s.end());
    if (monotone && built.last_index() > 0) {
        const double L = stheta(sums, std::nullopt, theta, parse_norm(o.norm), grid_of(o),
                                policy_of(o))
                             .limit->coords()[0];
        j["witness_stheta"] = to_json(divergence_witness(s, theta, Method::Stheta, L, o.eps0));
        j["witness_ntheta"] = to_json(divergence_witness(s, theta, Method::Ntheta));
    }
    emit(o, j.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lacunary summability toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate sequence/theta artifacts");
    gen->require_subcommand(1);
    CommonOpts gen_opts;
    std::string gen_kind;
    std::uint64_t gen_n = 1024;
    double gen_value = 0.0, gen_ratio = 2.0, gen_alpha = 2.0;
    int gen_blocks = 16;
    std::size_t gen_dim = 1;
    auto* gen_seq = gen->add_subcommand("seq", "generate a sequence");
    gen_seq->add_option("--kind", gen_kind, "const | zero | harmonic | alternating | char:SET | "
                                            "spike:SET | geomdecay:q | noisydecay:L | logdrift")
        ->required();
    gen_seq->add_option("--n", gen_n, "number of terms")->capture_default_str();
    gen_seq->add_option("--value", gen_value, "value for --kind const")->capture_default_str();
    gen_seq->add_option("--dim", gen_dim, "embed into R^d")->capture_default_str();
    add_common(gen_seq, gen_opts, false);
    auto* gen_theta = gen->add_subcommand("theta", "generate a lacunary cutoff sequence");
    gen_theta->add_option("--kind", gen_kind, "geom | power")->required();
    gen_theta->add_option("--ratio", gen_ratio, "geometric ratio")->capture_default_str();
    gen_theta->add_option("--alpha", gen_alpha, "power exponent")->capture_default_str();
    gen_theta->add_option("--blocks", gen_blocks, "number of blocks")->capture_default_str();
    add_common(gen_theta, gen_opts, false);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "evaluate one summability method");
    CommonOpts an_opts;
    std::string an_input, an_method = "ntheta", an_limit;
    double an_p = 1.0;
    analyze->add_option("--input", an_input, "sequence JSON")->required();
    analyze->add_option("--method", an_method, "ordinary | sigma1 | wp | ntheta | stheta")
        ->capture_default_str();
    analyze->add_option("--p", an_p, "wp exponent")->capture_default_str();
    analyze->add_option("--limit", an_limit, "candidate limit (comma coords) or 'auto'");
    add_common(analyze, an_opts);

    // density
    auto* density = app.add_subcommand("density", "theta-density of an index set");
    CommonOpts de_opts;
    std::string de_set;
    density->add_option("--set", de_set, "even | squares | multiples:m | explicit:[...]")
        ->required();
    add_common(density, de_opts);

    // compare
    auto* compare = app.add_subcommand("compare", "side-by-side method verdicts");
    CommonOpts cp_opts;
    std::string cp_input;
    std::vector<std::string> cp_thetas;
    double cp_p = 2.0;
    compare->add_option("--input", cp_input, "sequence JSON")->required();
    compare->add_option("--theta", cp_thetas, "theta specs (repeatable)");
    compare->add_option("--p", cp_p, "wp exponent")->capture_default_str();
    add_common(compare, cp_opts, false);

    // membership
    auto* member = app.add_subcommand("membership", "series membership in a summability space");
    CommonOpts me_opts;
    std::string me_series, me_method = "stheta";
    double me_p = 1.0;
    member->add_option("--series", me_series, "series JSON")->required();
    member->add_option("--method", me_method, "stheta | ntheta | sigma1 | wp")
        ->capture_default_str();
    member->add_option("--p", me_p, "wp exponent")->capture_default_str();
    add_common(member, me_opts);

    // counterexample
    auto* cx = app.add_subcommand("counterexample", "divergent-coefficient construction");
    CommonOpts cx_opts;
    std::string cx_functional = "harmonic", cx_mode = "exact";
    int cx_blocks = 1;
    std::uint64_t cx_horizon = 1u << 20;
    cx->add_option("--functional", cx_functional, "harmonic | altharmonic | constant[:c] | "
                                                  "geometric[:q] | explicit:[...]")
        ->capture_default_str();
    cx->add_option("--blocks", cx_blocks, "number of blocks P")->capture_default_str();
    cx->add_option("--mode", cx_mode, "exact | float")->capture_default_str();
    cx->add_option("--horizon", cx_horizon, "fvals horizon")->capture_default_str();
    add_common(cx, cx_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_seq->parsed()) {
            std::string kind = gen_kind;
            if (kind == "const") {
                std::ostringstream os;
                os << "const:" << gen_value;
                kind = os.str();
            }
            VectorSequence x = generate_sequence(kind, gen_n, gen_opts.seed);
            if (gen_dim > 1) x = embed_dim(x, gen_dim);
            emit(gen_opts, to_json(x).dump(2));
            return 0;
        }
        if (gen_theta->parsed()) {
            const LacunarySequence theta =
                gen_kind == "geom" ? LacunarySequence::geometric(gen_ratio, gen_blocks)
                : gen_kind == "power"
                    ? LacunarySequence::power(gen_alpha, gen_blocks)
                    : throw Error(Errc::BadGeneratorParam, "theta kind must be geom or power");
            if (theta.warning()) std::cerr << "warning: " << *theta.warning() << "\n";
            emit(gen_opts, to_json(theta).dump(2));
            return 0;
        }
        if (analyze->parsed()) return run_analyze(an_input, an_method, an_p, an_limit, an_opts);
        if (density->parsed()) return run_density(de_set, de_opts);
        if (compare->parsed()) return run_compare(cp_input, cp_thetas, cp_p, cp_opts);
        if (member->parsed()) return run_membership(me_series, me_method, me_p, me_opts);
        if (cx->parsed())
            return run_counterexample(cx_functional, cx_blocks, cx_mode, cx_horizon, cx_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
