#include "lacuna/io.hpp"

#include <fstream>
#include <sstream>

namespace lacuna {

json to_json(const VectorSequence& x) {
    json values = json::array();
    for (std::size_t k = 1; k <= x.size(); ++k) {
        json row = json::array();
        for (double c : x.at(k)) row.push_back(c);
        values.push_back(std::move(row));
    }
    json j{{"dim", x.dim()}, {"values", std::move(values)}};
    if (!x.source().empty()) j["source"] = x.source();
    return j;
}

VectorSequence sequence_from_json(const json& j) {
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        const auto& values = j.at("values");
        std::vector<double> flat;
        flat.reserve(values.size() * dim);
        for (const auto& row : values) {
            if (row.size() != dim)
                throw Error(Errc::DimensionMismatch, "sequence row does not match dim");
            for (const auto& c : row) flat.push_back(c.get<double>());
        }
        return VectorSequence(dim, std::move(flat), j.value("source", ""));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad sequence JSON: ") + e.what());
    }
}

json to_json(const LacunarySequence& theta) {
    json j{{"cutoffs", theta.cutoffs()}};
    if (!theta.source().empty()) j["source"] = theta.source();
    if (theta.warning()) j["warning"] = *theta.warning();
    return j;
}

LacunarySequence theta_from_json(const json& j) {
    try {
        if (j.contains("cutoffs"))
            return LacunarySequence::from_cutoffs(j.at("cutoffs").get<std::vector<std::uint64_t>>(),
                                                  j.value("source", ""));
        const auto kind = j.at("generator").get<std::string>();
        const auto blocks = j.at("blocks").get<int>();
        if (kind == "geom") return LacunarySequence::geometric(j.at("ratio").get<double>(), blocks);
        if (kind == "power") return LacunarySequence::power(j.at("alpha").get<double>(), blocks);
        throw Error(Errc::ParseError, "unknown theta generator '" + kind + "'");
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad theta JSON: ") + e.what());
    }
}

json to_json(const StabilizationPolicy& p) {
    return json{{"window", p.window}, {"tol", p.tol}};
}

StabilizationPolicy policy_from_json(const json& j) {
    StabilizationPolicy p;
    p.window = j.value("window", p.window);
    p.tol = j.value("tol", p.tol);
    return p;
}

json to_json(const EpsilonGrid& g) {
    return json{{"eps0", g.eps0}, {"ratio", g.ratio}, {"steps", g.steps},
                {"delta_tol", g.delta_tol}};
}

EpsilonGrid grid_from_json(const json& j) {
    EpsilonGrid g;
    g.eps0 = j.value("eps0", g.eps0);
    g.ratio = j.value("ratio", g.ratio);
    g.steps = j.value("steps", g.steps);
    g.delta_tol = j.value("delta_tol", g.delta_tol);
    return g;
}

json to_json(const SummabilityVerdict& v) {
    json j{{"method", method_name(v.method)},
           {"summable", v.summable},
           {"policy", to_json(v.policy)},
           {"limit_source", v.limit_source}};
    if (v.limit)
        j["limit"] = v.limit->coords();
    else
        j["limit"] = "none";
    j["residuals"] = v.residuals;
    j["checkpoints"] = v.checkpoints;
    if (v.method == Method::Stheta) {
        j["epsilons"] = v.epsilons;
        j["densities"] = v.densities;
    }
    if (v.grid) j["grid"] = to_json(*v.grid);
    if (v.method == Method::Wp || v.method == Method::Sigma1) j["p"] = v.p;
    if (v.horizon_blocks > 0) j["horizon_blocks"] = v.horizon_blocks;
    return j;
}

json to_json(const DensityTrace& t) {
    json j{{"fractions", t.fractions},
           {"stabilized", t.stabilized},
           {"policy", to_json(t.policy)}};
    if (t.estimate)
        j["estimate"] = *t.estimate;
    else
        j["estimate"] = "did-not-stabilize";
    return j;
}

json to_json(const SeriesContext& ctx) {
    return json{{"terms", to_json(ctx.terms())},
                {"coeffs", json{{"class", coeff_class_name(ctx.coeffs().cls)},
                                {"values", ctx.coeffs().values},
                                {"bound", ctx.coeffs().bound}}},
                {"norm", norm_name(ctx.norm())}};
}

SeriesContext series_from_json(const json& j, NormKind norm,
                               StabilizationPolicy validation_policy) {
    try {
        VectorSequence terms = sequence_from_json(j.at("terms"));
        const auto& cj = j.at("coeffs");
        Coefficients coeffs = Coefficients::make(parse_coeff_class(cj.at("class").get<std::string>()),
                                                 cj.at("values").get<std::vector<double>>());
        if (cj.contains("bound")) coeffs.bound = cj.at("bound").get<double>();
        if (j.contains("norm")) norm = parse_norm(j.at("norm").get<std::string>());
        return SeriesContext(std::move(terms), std::move(coeffs), norm, validation_policy);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad series JSON: ") + e.what());
    }
}

json to_json(const WucReport& r) {
    json traces = json::array();
    for (const auto& t : r.traces)
        traces.push_back(json{{"label", t.label},
                              {"checkpoints", t.checkpoints},
                              {"abs_partial", t.abs_partial},
                              {"final_sum", t.final_sum},
                              {"divergent", t.divergent}});
    return json{{"H_estimate", r.H_estimate}, {"method", r.method}, {"traces", std::move(traces)}};
}

json to_json(const CauchyOutcome& o) {
    json j{{"cauchy", o.cauchy}};
    if (!o.reason.empty()) j["reason"] = o.reason;
    j["certificate"] = json{{"selected", o.certificate.selected},
                            {"level", o.certificate.level},
                            {"thresholds", o.certificate.thresholds},
                            {"max_level", o.certificate.max_level},
                            {"limit", o.certificate.limit.coords()},
                            {"epsilons", o.certificate.epsilons},
                            {"densities", o.certificate.densities}};
    return j;
}

json to_json(const DivergenceWitness& w) {
    json j{{"method", method_name(w.method)}, {"limit", w.limit}, {"eps", w.eps}};
    if (w.first_fully_deviant_block)
        j["first_fully_deviant_block"] = *w.first_fully_deviant_block;
    if (!w.ladder_hits.empty()) {
        json hits = json::array();
        for (const auto& [A, r] : w.ladder_hits) hits.push_back(json{{"A", A}, {"block", r}});
        j["ladder_hits"] = std::move(hits);
    }
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

json to_json(const CounterexampleResult& r, const FunctionalValues& fvals) {
    json rle = json::array();
    for (const auto& [token, count] : r.coeff_rle(fvals))
        rle.push_back(json::array({token, count}));
    json sums = json::array();
    if (r.exact)
        for (const auto& s : r.block_sums_exact) sums.push_back(s.str());
    else
        for (double s : r.block_sums) sums.push_back(s);
    return json{{"functional", r.fvals_descriptor},
                {"blocks", r.boundaries},
                {"coeffs_rle", std::move(rle)},
                {"block_sums", std::move(sums)},
                {"block_error_bounds", r.block_error_bounds},
                {"arithmetic", r.exact ? "exact-rational" : "float"}};
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string verdict_csv(const SummabilityVerdict& v) {
    std::ostringstream os;
    os << "r,k_r,h_r,residual";
    for (double e : v.epsilons) os << ",density@" << fmt(e);
    os << "\n";
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < v.checkpoints.size(); ++i) {
        const std::uint64_t k = v.checkpoints[i];
        os << (i + 1) << "," << k << "," << (k - prev) << ",";
        if (i < v.residuals.size()) os << fmt(v.residuals[i]);
        for (const auto& dens : v.densities) os << "," << fmt(dens[i]);
        os << "\n";
        prev = k;
    }
    return os.str();
}

std::string density_csv(const DensityTrace& t, const LacunarySequence& theta) {
    std::ostringstream os;
    os << "r,k_r,h_r,fraction\n";
    for (std::size_t r = 1; r <= t.fractions.size(); ++r)
        os << r << "," << theta.cutoff(r) << "," << theta.block_length(r) << ","
           << fmt(t.fractions[r - 1]) << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
    out << contents;
}

} // namespace lacuna
