// entropy-bounds: evaluate energy-constrained entropy bounds, Gibbs data,
// extremal witnesses and verification suites for a spectrum given as JSON.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ebnd/bounds.hpp"
#include "ebnd/config.hpp"
#include "ebnd/distribution.hpp"
#include "ebnd/errors.hpp"
#include "ebnd/extremal.hpp"
#include "ebnd/gibbs.hpp"
#include "ebnd/io.hpp"
#include "ebnd/verify.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string spectrum_path;
    std::string output;  // empty = stdout
    std::string format = "csv";
    double tol = 1e-10;
    bool bits = false;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--spectrum", o.spectrum_path, "spectrum JSON file")->required();
    cmd->add_option("--output", o.output, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", o.tol, "numeric tolerance");
    cmd->add_flag("--bits", o.bits, "report entropies in bits instead of nats");
    cmd->add_option("--seed", o.seed, "seed for randomized suites");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw ebnd::Error("cannot open output file '" + o.output + "'");
    out << text;
}

std::size_t thread_cap() {
    if (const char* env = std::getenv("ENTROPY_BOUNDS_THREADS")) {
        const long n = std::atol(env);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

struct BoundRow {
    double E, eps;
    ebnd::BoundResult r;
};

std::string bound_rows_csv(const std::vector<BoundRow>& rows) {
    std::ostringstream os;
    os << "E,epsilon,kappa,branch,a,F,F_plus_arg,log_base\n";
    for (const BoundRow& row : rows) {
        os << ebnd::format_double(row.E) << ',' << ebnd::format_double(row.eps) << ','
           << ebnd::format_double(row.r.value) << ',' << to_string(row.r.branch) << ','
           << ebnd::format_double(row.r.threshold_a) << ',' << ebnd::format_double(row.r.F)
           << ',';
        if (row.r.f_plus_argument) os << ebnd::format_double(*row.r.f_plus_argument);
        os << ',' << ebnd::log_base_name() << '\n';
    }
    return os.str();
}

json bound_row_json(const BoundRow& row) {
    json j{{"E", row.E},
           {"epsilon", row.eps},
           {"kappa", row.r.value},
           {"branch", to_string(row.r.branch)},
           {"a", row.r.threshold_a},
           {"F", row.r.F},
           {"log_base", ebnd::log_base_name()}};
    if (row.r.f_plus_argument)
        j["F_plus_arg"] = *row.r.f_plus_argument;
    else
        j["F_plus_arg"] = nullptr;
    return j;
}

// Computes rows over the (E, eps) grid in parallel, emitted in grid order.
std::vector<BoundRow> sweep_rows(const ebnd::Spectrum& s, const std::vector<double>& es,
                                 const std::vector<double>& epss, double tol) {
    std::vector<BoundRow> rows(es.size() * epss.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex error_mu;

    const std::size_t workers = std::min(thread_cap(), rows.size());
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
            if (failed.load()) return;
            const double E = es[i / epss.size()];
            const double eps = epss[i % epss.size()];
            try {
                rows[i] = {E, eps, ebnd::kappa(s, E, eps, tol)};
            } catch (const std::exception& e) {
                std::scoped_lock lk(error_mu);
                failed.store(true);
                error_msg = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    if (failed.load()) throw ebnd::Error(error_msg);
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"energy-constrained entropy bounds"};
    app.require_subcommand(1);

    CommonOpts o;
    double E = 0.0;
    std::string eps_spec = "0";
    std::string e_spec;
    std::uint64_t trials = 10000;
    std::uint64_t quantum_trials = 2000;
    std::size_t dim = 16;
    std::size_t cutoff = 200;

    CLI::App* bound = app.add_subcommand("bound", "evaluate kappa at one (E, eps)");
    add_common(bound, o);
    bound->add_option("--E", E, "energy bound")->required();
    bound->add_option("--eps", eps_spec, "trace/TV distance bound")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate kappa over an (E, eps) grid");
    add_common(sweep, o);
    sweep->add_option("--E", e_spec, "energy grid (x | a:b:n | log:a:b:n)")->required();
    sweep->add_option("--eps", eps_spec, "epsilon grid")->required();

    CLI::App* gibbs = app.add_subcommand("gibbs", "solve the Gibbs state data");
    add_common(gibbs, o);
    gibbs->add_option("--E", e_spec, "energy or energy grid")->required();

    CLI::App* witness = app.add_subcommand("witness", "emit the extremal pair");
    add_common(witness, o);
    witness->add_option("--E", E, "energy bound")->required();
    witness->add_option("--eps", eps_spec, "distance bound")->required();

    CLI::App* verify = app.add_subcommand("verify", "run sampling + oracle + identity suites");
    add_common(verify, o);
    verify->add_option("--E", E, "energy bound")->required();
    verify->add_option("--trials", trials, "classical trials");
    verify->add_option("--quantum-trials", quantum_trials, "quantum trials");
    verify->add_option("--dim", dim, "quantum sampling dimension");

    CLI::App* oracle = app.add_subcommand("oracle", "run the brute-force oracle at one point");
    add_common(oracle, o);
    oracle->add_option("--E", E, "energy bound")->required();
    oracle->add_option("--eps", eps_spec, "distance bound")->required();
    oracle->add_option("--cutoff", cutoff, "oracle support cutoff N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    ebnd::set_log_base(o.bits ? ebnd::LogBase::bits : ebnd::LogBase::nats);
    const ebnd::Spectrum s = ebnd::load_spectrum_file(o.spectrum_path);

    if (bound->parsed()) {
        const std::vector<double> epss = ebnd::parse_grid(eps_spec);
        std::vector<BoundRow> rows;
        for (double eps : epss) rows.push_back({E, eps, ebnd::kappa(s, E, eps, o.tol)});
        if (o.format == "json") {
            json arr = json::array();
            for (const BoundRow& r : rows) arr.push_back(bound_row_json(r));
            emit(o, arr.dump(2) + "\n");
        } else {
            emit(o, bound_rows_csv(rows));
        }
        return 0;
    }

    if (sweep->parsed()) {
        const std::vector<double> es = ebnd::parse_grid(e_spec);
        const std::vector<double> epss = ebnd::parse_grid(eps_spec);
        const std::vector<BoundRow> rows = sweep_rows(s, es, epss, o.tol);
        if (o.format == "json") {
            json arr = json::array();
            for (const BoundRow& r : rows) arr.push_back(bound_row_json(r));
            emit(o, arr.dump(2) + "\n");
        } else {
            emit(o, bound_rows_csv(rows));
        }
        return 0;
    }

    if (gibbs->parsed()) {
        const std::vector<double> es = ebnd::parse_grid(e_spec);
        std::ostringstream csv;
        json arr = json::array();
        csv << "E,beta,Z,F,mean_energy,log_base\n";
        for (double e : es) {
            const ebnd::GibbsSolution sol = ebnd::solve_beta(s, e, o.tol);
            csv << ebnd::format_double(e) << ',' << ebnd::format_double(sol.beta) << ','
                << ebnd::format_double(std::exp(sol.log_z)) << ','
                << ebnd::format_double(sol.entropy) << ','
                << ebnd::format_double(sol.mean_energy) << ',' << ebnd::log_base_name() << '\n';
            arr.push_back(json{{"E", e},
                               {"beta", sol.beta},
                               {"log_Z", sol.log_z},
                               {"F", sol.entropy},
                               {"mean_energy", sol.mean_energy},
                               {"residual", sol.residual},
                               {"log_base", ebnd::log_base_name()}});
        }
        emit(o, o.format == "json" ? arr.dump(2) + "\n" : csv.str());
        return 0;
    }

    if (witness->parsed()) {
        const double eps = ebnd::parse_grid(eps_spec).at(0);
        const ebnd::ExtremalPair pair = ebnd::extremal_pair(s, E, eps, o.tol);
        const ebnd::BoundResult b = ebnd::kappa(s, E, eps, o.tol);
        if (o.format == "csv") {
            emit(o, ebnd::distribution_to_csv(pair.rho_diag));
        } else {
            json doc{{"E", E},
                     {"eps", eps},
                     {"kappa", b.value},
                     {"entropy_difference",
                      ebnd::shannon_entropy(pair.rho_diag) - ebnd::shannon_entropy(pair.sigma_diag)},
                     {"tv_distance", ebnd::tv_distance(pair.rho_diag, pair.sigma_diag)},
                     {"expected_f", ebnd::expected_f(pair.rho_diag, s)},
                     {"rho", json::parse(ebnd::distribution_to_json(pair.rho_diag))},
                     {"sigma", json::parse(ebnd::distribution_to_json(pair.sigma_diag))},
                     {"log_base", ebnd::log_base_name()}};
            emit(o, doc.dump(2) + "\n");
        }
        return 0;
    }

    if (oracle->parsed()) {
        const double eps = ebnd::parse_grid(eps_spec).at(0);
        const double delta = ebnd::delta_oracle(s, E, eps, cutoff, std::min(o.tol, 1e-9));
        const ebnd::BoundResult b = ebnd::kappa(s, E, eps, o.tol);
        if (o.format == "json") {
            json doc{{"E", E}, {"epsilon", eps},          {"delta", delta},
                     {"kappa", b.value}, {"log_base", ebnd::log_base_name()}};
            emit(o, doc.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << "E,epsilon,delta,kappa,log_base\n"
               << ebnd::format_double(E) << ',' << ebnd::format_double(eps) << ','
               << ebnd::format_double(delta) << ',' << ebnd::format_double(b.value) << ','
               << ebnd::log_base_name() << '\n';
            emit(o, os.str());
        }
        return 0;
    }

    // verify
    const double vtol = 1e-9;
    json suites = json::array();
    std::uint64_t violations = 0;

    const ebnd::VerificationReport classical =
        ebnd::sample_verify_classical(s, E, trials, o.seed, vtol);
    suites.push_back(json::parse(ebnd::report_to_json(classical)));
    violations += classical.violations;

    const ebnd::VerificationReport fano =
        ebnd::sample_verify_fano(s, E, trials / 2, o.seed, vtol);
    suites.push_back(json::parse(ebnd::report_to_json(fano)));
    violations += fano.violations;

    const std::size_t qdim = s.is_finite() ? std::min(dim, s.size()) : dim;
    const ebnd::VerificationReport quantum =
        ebnd::sample_verify_quantum(s, E, qdim, quantum_trials, o.seed, vtol);
    suites.push_back(json::parse(ebnd::report_to_json(quantum)));
    violations += quantum.violations;

    // identity suite over a small E grid around the requested energy
    {
        ebnd::VerificationReport ident;
        ident.seed = o.seed;
        ident.notes = "optimality identity residuals";
        // finite spectra: the identity's validity domain ends at the
        // beta = 0 arithmetic mean
        double e_cap = std::numeric_limits<double>::infinity();
        if (s.is_finite()) {
            double sum = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) sum += s.level(i);
            e_cap = sum / static_cast<double>(s.size());
        }
        bool first = true;
        for (int k = 1; k <= 8; ++k) {
            const double e = E * k / 4.0;
            if (e > e_cap) break;
            double resid;
            try {
                resid = ebnd::identity_residual(s, e, o.tol);
            } catch (const ebnd::TargetEnergyUnattainable&) {
                continue;
            }
            ++ident.trials;
            const double slack = 1e-8 - resid;
            if (first) {
                ident.max_slack = ident.min_slack = slack;
                first = false;
            } else {
                ident.max_slack = std::max(ident.max_slack, slack);
                ident.min_slack = std::min(ident.min_slack, slack);
            }
            if (resid > 1e-8) ++ident.violations;
        }
        suites.push_back(json::parse(ebnd::report_to_json(ident)));
        violations += ident.violations;
    }

    // oracle spot check
    {
        ebnd::VerificationReport orep;
        orep.seed = o.seed;
        orep.notes = "delta oracle vs kappa";
        bool first = true;
        for (double eps : {0.2, 0.7}) {
            const double delta = ebnd::delta_oracle(s, E, eps, 200, 1e-9);
            const double bound = ebnd::kappa(s, E, eps, o.tol).value;
            ++orep.trials;
            const double slack = bound - delta;
            if (first) {
                orep.max_slack = orep.min_slack = slack;
                first = false;
            } else {
                orep.max_slack = std::max(orep.max_slack, slack);
                orep.min_slack = std::min(orep.min_slack, slack);
            }
            if (std::abs(bound - delta) > 1e-4) ++orep.violations;
        }
        suites.push_back(json::parse(ebnd::report_to_json(orep)));
        violations += orep.violations;
    }

    json doc{{"spectrum", s.name().empty() ? o.spectrum_path : s.name()},
             {"E", E},
             {"violations", violations},
             {"suites", suites}};
    emit(o, doc.dump(2) + "\n");
    return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ebnd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
