// Command-line harness: every module exposed as a reproducible command with
// CSV or JSON output. Exit codes: 0 success, 2 usage error, 3 numerical
// failure (diagnostic JSON on stderr).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergman/report.hpp"

using namespace bergman;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string domain = "disc";
    int basis_size = 0; // 0 = closed form where available
    double fd_step = 1e-3;
    unsigned seed = 0;
    int segments = 16;
    int iters = 200;
    int kmax = 6;
    std::string metric = "bergman";
    std::string out;
    std::string format = "csv";
};

DomainSpec parse_domain(const std::string& s)
{
    if (s == "disc") return DomainSpec::disc();
    if (s == "punctured-disc") return DomainSpec::punctured_disc();
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::string head = s.substr(0, colon), arg = s.substr(colon + 1);
        if (head == "polydisc") return DomainSpec::polydisc(std::stoi(arg));
        if (head == "ball") return DomainSpec::ball(std::stoi(arg));
        if (head == "annulus") return DomainSpec::annulus(std::stod(arg));
    }
    throw std::invalid_argument(
        "unknown domain '" + s + "' (expected disc|polydisc:<n>|ball:<n>|annulus:<r>|punctured-disc)");
}

// "re,im;re,im;..." with a bare "re" meaning a real coordinate
Point parse_point(const std::string& s, int dim)
{
    std::vector<cplx> coords;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto comma = part.find(',');
        double re = std::stod(part.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(part.substr(comma + 1));
        coords.emplace_back(re, im);
    }
    if (static_cast<int>(coords.size()) != dim)
        throw std::invalid_argument("point '" + s + "' has " + std::to_string(coords.size())
                                    + " coordinates, domain needs " + std::to_string(dim));
    Point z(dim);
    for (int i = 0; i < dim; ++i) z[i] = coords[i];
    return z;
}

KernelSource make_source(const RunConfig& cfg)
{
    DomainSpec d = parse_domain(cfg.domain);
    if (cfg.basis_size > 0) {
        if (cfg.basis_size < d.dimension() + 1)
            throw std::invalid_argument("--basis-size must be at least n+1");
        return KernelSource::series(d, cfg.basis_size);
    }
    if (d.kind() == DomainKind::Annulus || d.kind() == DomainKind::CustomSeries)
        throw std::invalid_argument("this domain has no closed-form kernel; pass --basis-size");
    return KernelSource::closed_form(d);
}

MetricKind parse_metric(const std::string& s)
{
    if (s == "bergman") return MetricKind::Bergman;
    if (s == "tilde") return MetricKind::Tilde;
    throw std::invalid_argument("--metric must be bergman or tilde");
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string config_header(const std::string& command, const RunConfig& cfg)
{
    std::ostringstream os;
    os << "# config: command=" << command << " domain=" << cfg.domain
       << " basis-size=" << cfg.basis_size << " fd-step=" << fmt(cfg.fd_step)
       << " seed=" << cfg.seed << " segments=" << cfg.segments << " iters=" << cfg.iters
       << " kmax=" << cfg.kmax << " metric=" << cfg.metric;
    return os.str();
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
    f << text;
}

json matrix_json(const Eigen::MatrixXcd& M)
{
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j)
            row.push_back({{"re", M(i, j).real()}, {"im", M(i, j).imag()}});
        rows.push_back(row);
    }
    return rows;
}

void matrix_csv(std::ostringstream& os, const std::string& name, const Eigen::MatrixXcd& M)
{
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            os << name << "," << i << "," << j << "," << fmt(M(i, j).real()) << ","
               << fmt(M(i, j).imag()) << "\n";
}

std::vector<FunctionVector> leading_tuple(const BasisSpec& basis)
{
    return report_detail::leading_tuple(basis.size(), basis.dimension() + 1);
}

// ---- subcommand bodies ----

void cmd_tensors(const RunConfig& cfg, const std::string& point)
{
    auto src = make_source(cfg);
    Point z = parse_point(point, src.domain().dimension());
    Eigen::MatrixXcd T = bergman_tensor(src, z);
    Eigen::MatrixXcd R = ricci_tensor(src, z, cfg.fd_step);
    Eigen::MatrixXcd Tt = tilde_tensor(src, z, cfg.fd_step);

    if (cfg.format == "json") {
        json j = {{"command", "tensors"}, {"domain", cfg.domain}, {"point", point},
                  {"bergman", matrix_json(T)}, {"ricci", matrix_json(R)},
                  {"tilde", matrix_json(Tt)}};
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << config_header("tensors", cfg) << " point=" << point << "\n";
        os << "tensor,i,j,re,im\n";
        matrix_csv(os, "bergman", T);
        matrix_csv(os, "ricci", R);
        matrix_csv(os, "tilde", Tt);
        emit(cfg, os.str());
    }
}

void cmd_identity(const RunConfig& cfg, int count)
{
    auto src = make_source(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::ostringstream os;
    json rows = json::array();
    if (cfg.format == "csv") {
        os << config_header("identity", cfg) << " count=" << count << "\n";
        os << "trial,point_modulus,residual\n";
    }
    double lim = src.domain().kind() == DomainKind::Annulus ? 0.9 : 0.7;
    for (int t = 0; t < count; ++t) {
        Point z = report_detail::seeded_interior(rng, src.domain(), -lim, lim);
        double res = norm_identity_residual(src, z);
        if (cfg.format == "csv")
            os << t << "," << fmt(z.norm()) << "," << fmt(res) << "\n";
        else
            rows.push_back({{"trial", t}, {"point_modulus", z.norm()}, {"residual", res}});
    }
    if (cfg.format == "json")
        emit(cfg, json{{"command", "identity"}, {"domain", cfg.domain}, {"rows", rows}}.dump(2)
                      + "\n");
    else
        emit(cfg, os.str());
}

void cmd_criterion(const RunConfig& cfg, const std::string& point)
{
    auto src = make_source(cfg);
    Point z = parse_point(point, src.domain().dimension());
    auto rep = tilde_ratio(src, leading_tuple(src.basis()), z);
    if (cfg.format == "json") {
        json j = {{"command", "criterion"}, {"domain", cfg.domain}, {"point", point},
                  {"numerator", rep.numerator}, {"gram", rep.gram},
                  {"denominator", rep.denominator}, {"ratio", rep.ratio},
                  {"normalized", rep.normalized}};
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << config_header("criterion", cfg) << " point=" << point << "\n";
        os << "numerator,gram,denominator,ratio,normalized\n";
        os << fmt(rep.numerator) << "," << fmt(rep.gram) << "," << fmt(rep.denominator) << ","
           << fmt(rep.ratio) << "," << fmt(rep.normalized) << "\n";
        emit(cfg, os.str());
    }
}

void cmd_sup_probe(const RunConfig& cfg, const std::string& point, int restarts)
{
    auto src = make_source(cfg);
    Point z = parse_point(point, src.domain().dimension());
    auto probe = fraction_sup_probe(src, z, restarts, cfg.seed);
    double gap = 1.0 - probe.best / probe.target;
    if (cfg.format == "json") {
        emit(cfg, json{{"command", "sup-probe"}, {"domain", cfg.domain}, {"point", point},
                       {"best", probe.best}, {"target", probe.target}, {"relative_gap", gap}}
                          .dump(2)
                      + "\n");
    } else {
        std::ostringstream os;
        os << config_header("sup-probe", cfg) << " point=" << point << " restarts=" << restarts
           << "\n";
        os << "best,target,relative_gap\n";
        os << fmt(probe.best) << "," << fmt(probe.target) << "," << fmt(gap) << "\n";
        emit(cfg, os.str());
    }
}

void cmd_distance(const RunConfig& cfg, const std::string& from, const std::string& to)
{
    auto src = make_source(cfg);
    MetricKind kind = parse_metric(cfg.metric);
    const int n = src.domain().dimension();
    Point a = parse_point(from, n), b = parse_point(to, n);
    double d = distance_upper(src, kind, a, b, cfg.segments, cfg.iters, cfg.seed, cfg.fd_step);
    if (cfg.format == "json") {
        emit(cfg, json{{"command", "distance"}, {"domain", cfg.domain}, {"metric", cfg.metric},
                       {"from", from}, {"to", to}, {"distance_upper", d}}
                          .dump(2)
                      + "\n");
    } else {
        std::ostringstream os;
        os << config_header("distance", cfg) << " from=" << from << " to=" << to << "\n";
        os << "distance_upper\n" << fmt(d) << "\n";
        emit(cfg, os.str());
    }
}

void cmd_probe(const RunConfig& cfg, const std::string& target)
{
    auto src = make_source(cfg);
    MetricKind kind = parse_metric(cfg.metric);
    Point t = parse_point(target, src.domain().dimension());
    ProbeConfig pc;
    pc.segments = cfg.segments;
    pc.iters = cfg.iters;
    pc.seed = cfg.seed;
    pc.fd_h = cfg.fd_step;
    auto res = completeness_probe(src, kind, t, cfg.kmax, pc);
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& r : res.rows)
            rows.push_back({{"k", r.k}, {"boundary_distance", r.boundary_distance},
                            {"distance", r.distance_estimate}});
        emit(cfg, json{{"command", "probe"}, {"domain", cfg.domain}, {"metric", cfg.metric},
                       {"target", target}, {"slope", res.slope}, {"rows", rows}}
                          .dump(2)
                      + "\n");
    } else {
        std::ostringstream os;
        os << config_header("probe", cfg) << " target=" << target << " slope=" << fmt(res.slope)
           << "\n";
        os << "k,boundary_distance,distance\n";
        for (const auto& r : res.rows)
            os << r.k << "," << fmt(r.boundary_distance) << "," << fmt(r.distance_estimate)
               << "\n";
        emit(cfg, os.str());
    }
}

void cmd_green(const RunConfig& cfg, const std::string& target, double level, long long samples)
{
    auto src = make_source(cfg); // requires --basis-size: the ratio needs a basis
    auto fs = leading_tuple(src.basis());
    Point t = parse_point(target, src.domain().dimension());
    auto poles = src.domain().approach_sequence(t, cfg.kmax);

    std::ostringstream os;
    json rows = json::array();
    if (cfg.format == "csv") {
        os << config_header("green", cfg) << " target=" << target << " level=" << fmt(level)
           << " samples=" << samples << "\n";
        os << "pole_modulus,volume,stderr,bound,ratio\n";
    }
    for (const auto& pole : poles) {
        GreenSpec g(src.domain(), pole);
        auto vol = sublevel_volume(g, level, samples, cfg.seed);
        auto chain = hyperconvexity_bound(src, fs, {pole}, level, samples / 10, cfg.seed);
        if (cfg.format == "csv")
            os << fmt(pole.norm()) << "," << fmt(vol.value) << "," << fmt(vol.stderr_) << ","
               << fmt(chain[0].bound) << "," << fmt(chain[0].ratio) << "\n";
        else
            rows.push_back({{"pole_modulus", pole.norm()}, {"volume", vol.value},
                            {"stderr", vol.stderr_}, {"bound", chain[0].bound},
                            {"ratio", chain[0].ratio}});
    }
    if (cfg.format == "json")
        emit(cfg, json{{"command", "green"}, {"domain", cfg.domain}, {"level", level},
                       {"samples", samples}, {"rows", rows}}
                          .dump(2)
                      + "\n");
    else
        emit(cfg, os.str());
}

void cmd_plucker(const RunConfig& cfg, int trials, int ambient, int arity)
{
    if (ambient < 2 || arity < 1 || arity > ambient)
        throw std::invalid_argument("plucker: need 1 <= arity <= ambient, ambient >= 2");
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::ostringstream os;
    json rows = json::array();
    if (cfg.format == "csv") {
        os << config_header("plucker", cfg) << " trials=" << trials << " ambient=" << ambient
           << " arity=" << arity << "\n";
        os << "trial,cauchy_binet_residual,plucker_residual\n";
    }
    for (int t = 0; t < trials; ++t) {
        std::vector<Eigen::VectorXcd> as(arity), bs(arity);
        Eigen::MatrixXcd A(arity, ambient), B(arity, ambient);
        for (int i = 0; i < arity; ++i) {
            as[i].resize(ambient);
            bs[i].resize(ambient);
            for (int j = 0; j < ambient; ++j) {
                as[i][j] = cplx(gauss(rng), gauss(rng));
                bs[i][j] = cplx(gauss(rng), gauss(rng));
            }
            A.row(i) = as[i].transpose();
            B.row(i) = bs[i].transpose();
        }
        auto u = wedge::wedge_of(as);
        cplx lhs = wedge::inner(u, wedge::wedge_of(bs));
        cplx rhs = (A * B.adjoint()).determinant();
        double cb = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
        double pr = arity >= 2 ? wedge::plucker_residual(u) / u.norm2() : 0.0;
        if (cfg.format == "csv")
            os << t << "," << fmt(cb) << "," << fmt(pr) << "\n";
        else
            rows.push_back({{"trial", t}, {"cauchy_binet_residual", cb},
                            {"plucker_residual", pr}});
    }
    if (cfg.format == "json")
        emit(cfg, json{{"command", "plucker"}, {"rows", rows}}.dump(2) + "\n");
    else
        emit(cfg, os.str());
}

int cmd_report(const RunConfig& cfg)
{
    auto results = run_acceptance(cfg.seed);
    int failures = 0;
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& r : results) {
            rows.push_back({{"name", r.name}, {"passed", r.passed}, {"worst", r.worst},
                            {"detail", r.detail}});
            if (!r.passed) ++failures;
        }
        emit(cfg, json{{"command", "report"}, {"seed", cfg.seed}, {"failures", failures},
                       {"checks", rows}}
                          .dump(2)
                      + "\n");
    } else {
        std::ostringstream os;
        os << config_header("report", cfg) << "\n";
        os << "check,passed,worst,detail\n";
        for (const auto& r : results) {
            os << r.name << "," << (r.passed ? "pass" : "fail") << "," << fmt(r.worst) << ",\""
               << r.detail << "\"\n";
            if (!r.passed) ++failures;
        }
        emit(cfg, os.str());
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bergman-type metric laboratory: kernels, tensors, criterion, distances"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string point = "0", from = "0", to = "0.5", target = "1";
    int count = 100, restarts = 8, trials = 50, ambient = 6, arity = 2;
    double level = -1.0;
    long long samples = 100000;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain,
                        "disc|polydisc:<n>|ball:<n>|annulus:<r>|punctured-disc");
        sub->add_option("--basis-size", cfg.basis_size,
                        "series truncation size (0 = closed form where available)")
            ->check(CLI::Range(0, 100000));
        sub->add_option("--fd-step", cfg.fd_step, "finite-difference step")
            ->check(CLI::Range(1e-12, 0.1));
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--segments", cfg.segments, "path segments")->check(CLI::Range(1, 1024));
        sub->add_option("--iters", cfg.iters, "optimizer iterations")
            ->check(CLI::Range(0, 100000));
        sub->add_option("--kmax", cfg.kmax, "approach sequence depth")->check(CLI::Range(1, 12));
        sub->add_option("--metric", cfg.metric, "bergman|tilde");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        return sub;
    };

    auto* tensors = add_common(app.add_subcommand("tensors", "metric/Ricci/modified tensors"));
    tensors->add_option("--point", point, "evaluation point re,im;re,im;...");
    auto* identity = add_common(app.add_subcommand("identity", "norm-identity residual sweep"));
    identity->add_option("--count", count, "number of seeded points");
    auto* criterion = add_common(app.add_subcommand("criterion", "criterion ratio at a point"));
    criterion->add_option("--point", point, "evaluation point");
    auto* sup = add_common(app.add_subcommand("sup-probe", "fraction supremum probe"));
    sup->add_option("--point", point, "evaluation point");
    sup->add_option("--restarts", restarts, "random restarts");
    auto* dist = add_common(app.add_subcommand("distance", "geodesic distance upper bound"));
    dist->add_option("--from", from, "start point");
    dist->add_option("--to", to, "end point");
    auto* probe = add_common(app.add_subcommand("probe", "completeness probe toward boundary"));
    probe->add_option("--target", target, "boundary (or puncture) target point");
    auto* green = add_common(app.add_subcommand("green", "Green sublevel volumes and bounds"));
    green->add_option("--target", target, "pole approach target");
    green->add_option("--level", level, "sublevel threshold (< 0)");
    green->add_option("--samples", samples, "Monte Carlo samples per estimate");
    auto* plucker = add_common(app.add_subcommand("plucker", "wedge/Plucker identity sweep"));
    plucker->add_option("--trials", trials, "random instances");
    plucker->add_option("--ambient", ambient, "ambient dimension");
    plucker->add_option("--arity", arity, "vectors per wedge");
    add_common(app.add_subcommand("report", "full acceptance suite"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tensors->parsed()) cmd_tensors(cfg, point);
        else if (identity->parsed()) cmd_identity(cfg, count);
        else if (criterion->parsed()) cmd_criterion(cfg, point);
        else if (sup->parsed()) cmd_sup_probe(cfg, point, restarts);
        else if (dist->parsed()) cmd_distance(cfg, from, to);
        else if (probe->parsed()) cmd_probe(cfg, target);
        else if (green->parsed()) cmd_green(cfg, target, level, samples);
        else if (plucker->parsed()) cmd_plucker(cfg, trials, ambient, arity);
        else return cmd_report(cfg);
    } catch (const numerical_error& e) {
        json diag = {{"error", "numerical"}, {"what", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
