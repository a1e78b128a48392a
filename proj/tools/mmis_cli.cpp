// Command-line front end for the MMIS lab: one subcommand per module plus a
// `report` command that runs the full verification campaign and writes the
// CSV/JSON artifact set. All stochastic paths are fixed by --seed, so a
// repeated run with the same seed reproduces every output byte for byte.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmis/report.hpp"

using namespace mmis;
using nlohmann::json;

namespace {

std::string g_out_dir;
std::uint64_t g_seed = 20250809;
std::string g_format = "csv";

std::ofstream open_out(const std::string& name) {
    std::filesystem::path path = name;
    if (!g_out_dir.empty()) {
        std::filesystem::create_directories(g_out_dir);
        path = std::filesystem::path(g_out_dir) / name;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// "a..b" -> contiguous 1-based site list
std::vector<int> parse_cut(const std::string& cut, int L) {
    const auto pos = cut.find("..");
    if (pos == std::string::npos) throw CLI::ValidationError("cut must have the form a..b");
    const int a = std::stoi(cut.substr(0, pos)), b = std::stoi(cut.substr(pos + 2));
    if (a < 1 || b > L || a > b) throw CLI::ValidationError("cut range outside 1..L");
    std::vector<int> sites;
    for (int i = a; i <= b; ++i) sites.push_back(i);
    return sites;
}

void cmd_dims(int d, int lmax) {
    const auto rows = threshold_report(d, lmax);
    if (g_format == "json") {
        json out = json::array();
        for (const auto& r : rows)
            out.push_back({{"L", r.L},
                           {"d", r.d},
                           {"dim_S", r.dim_S},
                           {"dim_T", r.dim_T},
                           {"equal", r.equal},
                           {"entanglement_certified", r.entanglement_certified}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "L,d,dim_S,dim_T,equal,entanglement_certified\n";
        for (const auto& r : rows)
            std::cout << r.L << "," << r.d << "," << r.dim_S << "," << r.dim_T << "," << (r.equal ? 1 : 0) << ","
                      << (r.entanglement_certified ? 1 : 0) << "\n";
    }
}

void cmd_mmis(int L, int d, const std::string& eof_cut, const std::string& neg_cut) {
    RingSpec spec(L, d);
    json out;
    out["L"] = L;
    out["d"] = d;
    out["dim_T"] = dim_translation_subspace(L, d);
    out["rank_PT"] = (spec.dim() <= 1024) ? rank_PT_check(spec) : dim_translation_subspace(L, d);
    const Mat rho = mmis_density(spec);
    out["purity"] = (rho * rho).trace().real();
    out["ensemble_members"] = orbit_decomposition(spec).orbit_count();
    Mat recon = Mat::Zero(spec.dim(), spec.dim());
    for (const auto& m : ensemble_decomposition(spec)) recon += m.weight * (m.state * m.state.adjoint());
    out["ensemble_reconstruction_residual"] = max_abs(recon - rho);
    if (!eof_cut.empty()) {
        const auto cert = eof_upper_bound_certificate(spec, parse_cut(eof_cut, L));
        out["eof"] = {{"cut", eof_cut},
                      {"average_entropy", cert.average_entropy},
                      {"bound_log_L", cert.bound},
                      {"max_member_rank", *std::max_element(cert.member_ranks.begin(), cert.member_ranks.end())}};
    }
    if (!neg_cut.empty())
        out["log_negativity"] = {{"cut", neg_cut}, {"value", negativity_witness(rho, spec, parse_cut(neg_cut, L))}};
    std::cout << out.dump(2) << "\n";
}

void cmd_correlators(int L, int d, bool prime_only, const std::string& out_name) {
    RingSpec spec(L, d);
    if (prime_only && !is_prime(L)) throw guard_error("correlators: --prime-only given but L is not prime");
    auto out = open_out(out_name);
    out << "observable,region,value,closed_form,residual\n";
    for (int i = 1; i <= L; ++i)
        for (int j = i + 1; j <= L; ++j) {
            const auto r = two_point_zz(spec, i, j);
            out << "two_point_zz," << i << ":" << j << "," << num(r.value) << ","
                << (r.closed_form_available ? num(r.closed_form) : "n/a") << ","
                << (r.closed_form_available ? num(std::abs(r.value - r.closed_form)) : "n/a") << "\n";
        }
    for (int na = 1; na <= std::min(3, L - 1); ++na) {
        std::vector<int> sites;
        for (int i = 1; i <= na; ++i) sites.push_back(i);
        RegionSpec region(sites, spec);
        const auto chk = theorem7_bound_check(spec, region);
        out << "rdm_trace_distance,1.." << na << "," << num(chk.distance) << "," << num(chk.bound) << ","
            << num(chk.ratio) << "\n";
    }
    std::cout << "wrote " << out_name << "\n";
}

void cmd_umps_span(int chi, int d, int L, int samples, const std::string& out_name) {
    std::mt19937_64 rng(g_seed);
    const auto est = span_rank_estimate(chi, d, L, samples, rng);
    json out{{"chi", est.chi},
             {"d", est.d},
             {"L", est.L},
             {"samples", est.sample_count},
             {"numeric_rank", est.numeric_rank},
             {"bound", est.bound},
             {"sufficient_samples", est.sufficient_samples},
             {"dim_T", dim_translation_subspace(L, d)},
             {"singular_values", est.singular_values}};
    auto file = open_out(out_name);
    file << out.dump(2) << "\n";
    std::cout << "wrote " << out_name << "\n";
}

void cmd_ose(int L, int d, const std::vector<double>& alphas, const std::string& out_name) {
    RingSpec spec(L, d);
    std::vector<int> sizes;
    for (int a = 1; 2 * a <= L; ++a) sizes.push_back(a);
    const auto rows = ose_entropy_scan(spec, alphas, sizes);
    auto out = open_out(out_name);
    out << "|A|,alpha,numeric,predicted,deviation\n";
    for (const auto& r : rows)
        out << r.region_size << "," << num(r.alpha) << "," << num(r.numeric) << "," << num(r.predicted) << ","
            << num(r.deviation) << "\n";
    std::cout << "wrote " << out_name << "\n";
}

void cmd_swssb(const std::vector<int>& L_list, int d, const std::string& out_name) {
    if (d != 2) throw guard_error("swssb: qubit rings only");
    auto out = open_out(out_name);
    out << "L,observable,trace_path,doubled_path,predicted\n";
    for (int L : L_list) {
        RingSpec spec(L, 2);
        const auto loc = renyi2_local(spec, 1, 2);
        out << L << ",renyi2_local," << num(loc.trace_path) << "," << num(loc.doubled_path) << ","
            << num(renyi2_local_predicted(spec)) << "\n";
        const auto mom = renyi2_momentum(spec, 1);
        out << L << ",renyi2_momentum," << num(mom.trace_path) << "," << num(mom.doubled_path) << ","
            << num(renyi2_momentum_predicted(spec, 1)) << "\n";
        const auto var = variance_normalized_renyi2(spec, 1);
        out << L << ",variance_normalized," << num(var.trace_path) << "," << num(var.doubled_path) << ",n/a\n";
    }
    std::cout << "wrote " << out_name << "\n";
}

void cmd_lindblad(int L, double lambda, double gamma, double dt, double tmax, const std::string& out_name) {
    RingSpec ring(L, 2);
    Mat rho0 = Mat::Zero(ring.dim(), ring.dim());
    rho0(0, 0) = 1.0;
    const auto rec = evolve(LindbladSpec(ring, lambda, gamma, dt, tmax), rho0);
    auto out = open_out(out_name);
    out << "t,F,one_minus_F,trace_drift,max_charge_drift\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i)
        out << num(rec.times[i]) << "," << num(rec.fidelities[i]) << "," << num(1.0 - rec.fidelities[i]) << ","
            << num(rec.trace_drift[i]) << "," << num(rec.max_charge_drift) << "\n";
    std::cout << "wrote " << out_name << " (fidelity convention: non-squared Uhlmann)\n";
}

int cmd_report(const std::string& config_file) {
    CampaignConfig config;
    config.seed = g_seed;
    config.out_dir = g_out_dir;
    if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw std::runtime_error("cannot read config file " + config_file);
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
            const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
            if (key == "seed")
                config.seed = std::stoull(value);
            else if (key == "out_dir")
                config.out_dir = value;
            else
                throw std::runtime_error("unknown config key: " + key);
        }
        g_out_dir = config.out_dir;
    }

    CampaignData data;
    const auto results = run_verification_campaign(config, &data);

    {
        auto out = open_out("table-s1.csv");
        out << "L,d,dim_S,dim_T,equal,entanglement_certified\n";
        for (const auto& r : data.table_s1)
            out << r.L << "," << r.d << "," << r.dim_S << "," << r.dim_T << "," << (r.equal ? 1 : 0) << ","
                << (r.entanglement_certified ? 1 : 0) << "\n";
    }
    {
        auto out = open_out("correlators.csv");
        out << "observable,region,value,closed_form,residual\n";
        for (const auto& r : data.correlators)
            out << r.observable << "," << r.region << "," << num(r.value) << ","
                << (r.closed_form_available ? num(r.closed_form) : "n/a") << "," << num(r.residual) << "\n";
    }
    {
        auto out = open_out("ose.csv");
        out << "L,|A|,alpha,numeric,predicted,deviation\n";
        for (const auto& r : data.ose)
            out << r.L << "," << r.row.region_size << "," << num(r.row.alpha) << "," << num(r.row.numeric) << ","
                << num(r.row.predicted) << "," << num(r.row.deviation) << "\n";
    }
    {
        auto out = open_out("swssb.csv");
        out << "L,observable,trace_path,doubled_path,predicted\n";
        for (const auto& r : data.swssb)
            out << r.L << "," << r.observable << "," << num(r.trace_path) << "," << num(r.doubled_path) << ","
                << num(r.predicted) << "\n";
    }
    {
        auto out = open_out("trajectory.csv");
        out << "t,F,one_minus_F,trace_drift,max_charge_drift\n";
        for (const auto& r : data.trajectory)
            out << num(r.t) << "," << num(r.fidelity) << "," << num(r.one_minus_f) << "," << num(r.trace_drift) << ","
                << num(r.max_charge_drift) << "\n";
    }
    json summary;
    summary["schema_version"] = 1;
    summary["seed"] = config.seed;
    summary["fidelity_convention"] = "non-squared Uhlmann";
    summary["files"] = {"table-s1.csv", "correlators.csv", "ose.csv", "swssb.csv", "trajectory.csv"};
    bool all_passed = true;
    summary["criteria"] = json::array();
    for (const auto& r : results) {
        summary["criteria"].push_back(
            {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
        if (!r.passed) all_passed = false;
    }
    summary["all_passed"] = all_passed;
    {
        auto out = open_out("summary.json");
        out << summary.dump(2) << "\n";
    }
    for (const auto& r : results)
        std::printf("[%s] criterion %2d: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
    std::printf("%s\n", all_passed ? "all criteria passed" : "some criteria FAILED (see summary.json)");
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the maximally mixed translation-invariant state on a qudit ring"};
    app.require_subcommand(1);
    app.add_option("--seed", g_seed, "random seed fixing all stochastic paths");
    app.add_option("--out-dir", g_out_dir, "directory for output files");
    app.add_option("--format", g_format, "stdout table format: csv|json");

    int d = 2, L = 6, lmax = 8, chi = 1, samples = 0;
    std::string eof_cut, neg_cut, out_name, config_file;
    bool prime_only = false;
    double lambda = 1.0, gamma = 0.5, dt = 0.005, tmax = 10.0;
    std::vector<double> alphas{0.5, 1.0, 2.0, 3.0};
    std::vector<int> L_list{5, 7, 11};

    auto* dims = app.add_subcommand("dims", "subspace dimension table");
    dims->add_option("--d", d)->required();
    dims->add_option("--lmax", lmax)->required();

    auto* mmis_cmd = app.add_subcommand("mmis", "projector, ensemble, EoF certificate, negativity witness");
    mmis_cmd->add_option("--L", L)->required();
    mmis_cmd->add_option("--d", d)->required();
    mmis_cmd->add_option("--eof-cut", eof_cut, "contiguous region a..b for the EoF certificate");
    mmis_cmd->add_option("--negativity-cut", neg_cut, "contiguous region a..b for the partial transpose");

    auto* corr = app.add_subcommand("correlators", "two-point and RDM checks");
    corr->add_option("--L", L)->required();
    corr->add_option("--d", d)->required();
    corr->add_flag("--prime-only", prime_only, "fail if L is not prime (closed forms unavailable)");
    corr->add_option("--out", out_name, "output csv")->default_val("correlators.csv");

    auto* span = app.add_subcommand("umps-span", "uMPS span rank estimate");
    span->add_option("--chi", chi)->required();
    span->add_option("--d", d)->required();
    span->add_option("--L", L)->required();
    span->add_option("--samples", samples, "0 = min(bound, d^L) + 10");
    span->add_option("--out", out_name)->default_val("umps-span.json");

    auto* ose = app.add_subcommand("ose", "operator-space entanglement scan");
    ose->add_option("--L", L)->required();
    ose->add_option("--d", d)->required();
    ose->add_option("--alphas", alphas, "Renyi indices")->delimiter(',');
    ose->add_option("--out", out_name)->default_val("ose.csv");

    auto* swssb = app.add_subcommand("swssb", "SW-SSB correlators");
    swssb->add_option("--L-list", L_list, "ring sizes")->delimiter(',');
    swssb->add_option("--d", d)->default_val(2);
    swssb->add_option("--out", out_name)->default_val("swssb.csv");

    auto* lind = app.add_subcommand("lindblad", "Lindblad trajectory toward the MMIS");
    lind->add_option("--L", L)->default_val(9);
    lind->add_option("--lambda", lambda);
    lind->add_option("--gamma", gamma);
    lind->add_option("--dt", dt);
    lind->add_option("--tmax", tmax);
    lind->add_option("--out", out_name)->default_val("trajectory.csv");

    auto* report = app.add_subcommand("report", "full verification campaign with CSV/JSON artifacts");
    report->add_option("--config", config_file, "key=value config file (seed, out_dir)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dims->parsed()) cmd_dims(d, lmax);
        if (mmis_cmd->parsed()) cmd_mmis(L, d, eof_cut, neg_cut);
        if (corr->parsed()) cmd_correlators(L, d, prime_only, out_name);
        if (span->parsed()) {
            if (samples <= 0)
                samples = static_cast<int>(std::min<std::int64_t>(
                              binomial_exact(L + d * chi * chi - 1, d * chi * chi - 1), ipow(d, L))) +
                          10;
            cmd_umps_span(chi, d, L, samples, out_name);
        }
        if (ose->parsed()) cmd_ose(L, d, alphas, out_name);
        if (swssb->parsed()) cmd_swssb(L_list, d, out_name);
        if (lind->parsed()) cmd_lindblad(L, lambda, gamma, dt, tmax, out_name);
        if (report->parsed()) return cmd_report(config_file);
    } catch (const guard_error& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
