#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "output.hpp"
#include "skinspec/oracle.hpp"
#include "skinspec/polycore.hpp"
#include "skinspec/toeplitz2.hpp"

namespace skinspec::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// The standard-form tridiagonal eigenproblem behind a configuration.
struct Problem {
    TridiagonalMatrix matrix;
    std::optional<PerturbedDimerParams> params;  ///< 2-Toeplitz coefficients of `matrix`, when it has them
    bool physical = false;                       ///< chain or interface: report omega and clamp the kernel
};

PerturbedDimerParams scaled(PerturbedDimerParams p, double factor) {
    for (double* x : {&p.alpha1, &p.alpha2, &p.beta1, &p.beta2, &p.gamma1, &p.gamma2, &p.a, &p.b}) *x *= factor;
    return p;
}

Problem resolve(const RunConfig& config) {
    Problem problem;
    if (config.mode == Mode::matrix) {
        problem.params = config.params;
        problem.matrix = toeplitz2::build_perturbed(config.params, config.n);
        return problem;
    }
    problem.physical = true;
    problem.matrix = capacitance::generalized_capacitance(config.chain);
    if (config.mode == Mode::chain && capacitance::is_dimer(config.chain)) {
        problem.params = scaled(capacitance::dimer_coefficients(config.chain), 1.0 / config.chain.lengths.front());
    }
    return problem;
}

struct Row {
    double lambda = 0.0;
    double mu = std::nan("");
    std::string klass = "unclassified";
    double theta = std::nan("");
    std::vector<double> vector;
    std::string source = "inverse_iteration";
    double residual = 0.0;
};

const char* source_name(toeplitz2::VectorSource s) {
    switch (s) {
        case toeplitz2::VectorSource::exact_forward: return "exact_forward";
        case toeplitz2::VectorSource::exact_mirrored: return "exact_mirrored";
        case toeplitz2::VectorSource::inverse_iteration: return "inverse_iteration";
    }
    return "unknown";
}

void classify_row(Row& row, const PerturbedDimerParams& params) {
    row.mu = polycore::y_map(params, row.lambda);
    const auto [klass, theta] = toeplitz2::classify(row.mu);
    row.klass = klass == toeplitz2::EigenClass::bulk ? "bulk" : "exceptional";
    row.theta = theta;
}

std::vector<Row> solve(const Problem& problem, bool with_vectors) {
    std::vector<Row> rows;
    const double zero = capacitance::kZeroEigenvalueTolerance * problem.matrix.inf_norm();
    if (problem.params) {
        for (auto& pair : toeplitz2::eigen_all(*problem.params, problem.matrix.order())) {
            Row row;
            row.lambda = pair.lambda;
            row.mu = pair.mu;
            row.klass = pair.klass == toeplitz2::EigenClass::bulk ? "bulk" : "exceptional";
            row.theta = pair.theta;
            row.vector = std::move(pair.vector);
            row.source = source_name(pair.source);
            row.residual = pair.residual;
            rows.push_back(std::move(row));
        }
    } else {
        for (double lambda : oracle::sturm_eigenvalues(oracle::symmetrize(problem.matrix), 1e-15, 0)) {
            Row row;
            row.lambda = lambda;
            if (with_vectors) {
                row.vector = oracle::inverse_iteration_vector(problem.matrix, lambda);
                row.residual = relative_residual(problem.matrix, row.vector, lambda);
            }
            rows.push_back(std::move(row));
        }
    }
    if (problem.physical) {
        for (Row& row : rows) {
            if (std::abs(row.lambda) <= zero && row.lambda != 0.0) {
                row.lambda = 0.0;
                if (problem.params) classify_row(row, *problem.params);
            }
        }
    }
    return rows;
}

std::string index_name(const char* prefix, std::size_t i) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%s_%04zu", prefix, i);
    return buffer;
}

void cmd_spectrum(const RunConfig& config) {
    const Problem problem = resolve(config);
    const auto rows = solve(problem, false);
    Table table;
    table.columns = {"index", "lambda", "mu", "klass", "theta"};
    if (problem.physical) table.columns.push_back("omega");
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        std::vector<Cell> cells{static_cast<long long>(i + 1), r.lambda, r.mu, r.klass, r.theta};
        if (problem.physical) {
            if (r.lambda >= 0.0) {
                cells.emplace_back(config.chain.v_b * std::sqrt(config.chain.delta * r.lambda));
            } else {
                cells.emplace_back(std::monostate{});
                ++negatives;
            }
        }
        table.rows.push_back(std::move(cells));
    }
    write_table(table, config.out / "spectrum", config.format);
    if (negatives > 0) {
        std::fprintf(stderr, "warning: %zu negative eigenvalue(s); omega would be imaginary and is left empty\n",
                     negatives);
    }
}

json report_json(const toeplitz2::DecayReport& r) {
    json j = {{"rate_fit", json_number(r.rate_fit)},
              {"rate_theory", json_number(r.rate_theory)},
              {"bound_constant", json_number(r.bound_constant)},
              {"satisfied", r.satisfied},
              {"peak_index", r.peak_index}};
    if (r.rate_fit_left) j["rate_fit_left"] = json_number(*r.rate_fit_left);
    return j;
}

void cmd_modes(const RunConfig& config) {
    const Problem problem = resolve(config);
    const auto rows = solve(problem, true);
    const bool interface = config.mode == Mode::interface;

    Table summary;
    summary.columns = {"index", "lambda", "klass", "source", "residual", "peak_index",
                       "rate_fit", "rate_theory", "bound_constant", "satisfied"};
    if (interface) summary.columns.push_back("rate_fit_left");
    json reports = json::array();

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        Table vec;
        vec.columns = {"j", "value"};
        for (std::size_t j = 0; j < r.vector.size(); ++j) {
            vec.rows.push_back({static_cast<long long>(j + 1), r.vector[j]});
        }
        write_table(vec, config.out / "vectors" / index_name("mode", i + 1), config.format);

        std::optional<toeplitz2::DecayReport> report;
        if (interface) {
            const double gamma_ell = std::abs(config.chain.gammas.front()) * config.chain.lengths.front();
            report = toeplitz2::interface_localization_check(r.vector, config.chain.size() / 2, gamma_ell);
        } else if (problem.params) {
            report = toeplitz2::decay_report(r.vector, *problem.params);
        }

        std::vector<Cell> cells{static_cast<long long>(i + 1), r.lambda, r.klass, r.source, r.residual};
        json entry = {{"index", i + 1}, {"lambda", json_number(r.lambda)}};
        if (report) {
            cells.insert(cells.end(), {static_cast<long long>(report->peak_index), report->rate_fit,
                                       report->rate_theory, report->bound_constant, report->satisfied});
            if (interface) cells.emplace_back(report->rate_fit_left.value_or(std::nan("")));
            entry.update(report_json(*report));
        } else {
            const std::size_t peak = static_cast<std::size_t>(
                std::max_element(r.vector.begin(), r.vector.end(),
                                 [](double x, double y) { return std::abs(x) < std::abs(y); }) -
                r.vector.begin());
            cells.insert(cells.end(), {static_cast<long long>(peak + 1), std::monostate{}, std::monostate{},
                                       std::monostate{}, std::monostate{}});
            entry["peak_index"] = peak + 1;
        }
        summary.rows.push_back(std::move(cells));
        reports.push_back(std::move(entry));

        if (problem.physical) {
            const auto profile = capacitance::mode_profile(config.chain, r.vector, config.samples_per_gap);
            Table prof;
            prof.columns = {"x", "value", "resonator"};
            for (std::size_t k = 0; k < profile.xs.size(); ++k) {
                const int idx = profile.resonator_index_map[k];
                prof.rows.push_back({profile.xs[k], profile.values[k],
                                     idx < 0 ? Cell{std::monostate{}} : Cell{static_cast<long long>(idx + 1)}});
            }
            write_table(prof, config.out / "profiles" / index_name("profile", i + 1), config.format);
        }
    }
    write_table(summary, config.out / "modes_summary", config.format);
    write_json(reports, config.out / "decay_reports.json");
}

Table curve_table(const spectral::SymbolCurve& curve) {
    Table t;
    t.columns = {"theta", "re", "im"};
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
        t.rows.push_back({curve.thetas[k], curve.points[k].real(), curve.points[k].imag()});
    }
    return t;
}

spectral::GridSpec default_grid(const spectral::EigenLoops& loops, const TridiagonalMatrix& m) {
    double re0 = m.diag.front(), re1 = re0, im0 = 0.0, im1 = 0.0;
    for (const auto* c : {&loops.first, &loops.second}) {
        for (const auto& p : c->points) {
            re0 = std::min(re0, p.real());
            re1 = std::max(re1, p.real());
            im0 = std::min(im0, p.imag());
            im1 = std::max(im1, p.imag());
        }
    }
    const double pad = 0.15 * std::max({re1 - re0, im1 - im0, 1e-3});
    spectral::GridSpec g;
    g.re0 = re0 - pad;
    g.re1 = re1 + pad;
    g.im0 = im0 - pad;
    g.im1 = im1 + pad;
    g.nx = 128;
    g.ny = 128;
    return g;
}

// det(f(z) - lambda I) around 0 equals the summed branch winding around lambda.
Cell det_winding(const PerturbedDimerParams& params, double lambda, std::size_t samples) {
    PerturbedDimerParams shifted = params;
    shifted.alpha1 -= lambda;
    shifted.alpha2 -= lambda;
    try {
        return static_cast<long long>(spectral::winding(spectral::det_curve(shifted, samples), {0.0, 0.0}));
    } catch (const PointOnCurve&) {
        return std::string("undefined");
    }
}

void cmd_topology(const RunConfig& config) {
    const Problem problem = resolve(config);
    if (!problem.params) {
        throw ConfigError("topology needs 2-Toeplitz coefficients: use matrix mode or a dimer chain");
    }
    if (config.samples < 64) throw ConfigError("samples must be at least 64");
    const PerturbedDimerParams& params = *problem.params;
    const std::size_t samples = config.samples;

    const auto det = spectral::det_curve(params, samples);
    const auto loops = spectral::eig_curves(params, samples);
    write_table(curve_table(det), config.out / "det_curve", config.format);
    write_table(curve_table(loops.first), config.out / "eig_curve_1", config.format);
    write_table(curve_table(loops.second), config.out / "eig_curve_2", config.format);

    Table windings;
    windings.columns = {"lambda", "winding_det", "winding_eig"};
    for (const Row& r : solve(problem, false)) {
        Cell eig;
        try {
            eig = static_cast<long long>(spectral::winding(loops, {r.lambda, 0.0}));
        } catch (const PointOnCurve&) {
            eig = std::string("undefined");
        }
        windings.rows.push_back({r.lambda, det_winding(params, r.lambda, samples), eig});
    }
    write_table(windings, config.out / "winding", config.format);

    const spectral::GridSpec grid = config.grid.value_or(default_grid(loops, problem.matrix));
    const auto pseudo = spectral::pseudospectrum(problem.matrix, grid);
    const auto wind = spectral::winding_grid(loops, grid);
    Table ps;
    ps.columns = {"re", "im", "sigma_min"};
    Table wg;
    wg.columns = {"re", "im", "winding_eig"};
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const std::size_t idx = iy * grid.nx + ix;
            ps.rows.push_back({grid.re(ix), grid.im(iy), pseudo.sigma_min[idx]});
            wg.rows.push_back({grid.re(ix), grid.im(iy),
                               wind[idx] == spectral::kOnCurve ? Cell{std::string("on_curve")}
                                                               : Cell{static_cast<long long>(wind[idx])}});
        }
    }
    write_table(ps, config.out / "pseudospectrum", config.format);
    write_table(wg, config.out / "winding_grid", config.format);

    std::vector<double> eps = config.epsilons;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    Table levels;
    levels.columns = {"epsilon", "nodes_inside", "nested_violations"};
    std::size_t total_violations = 0;
    for (std::size_t e = 0; e < eps.size(); ++e) {
        long long inside = 0;
        long long violations = 0;
        for (double s : pseudo.sigma_min) {
            if (s <= eps[e]) {
                ++inside;
                if (e > 0 && s > eps[e - 1]) ++violations;
            }
        }
        total_violations += static_cast<std::size_t>(violations);
        levels.rows.push_back({eps[e], inside, violations});
    }
    write_table(levels, config.out / "levels", config.format);

    const auto minimum = spectral::min_abs_det(params, samples);
    json summary = {{"samples", samples},
                    {"branches_swapped", loops.swapped},
                    {"min_abs_det", json_number(minimum.abs_det)},
                    {"min_abs_det_theta", json_number(minimum.theta)},
                    {"det_winding_defined_at_zero", minimum.abs_det > 1e-8},
                    {"grid", {grid.re0, grid.re1, grid.im0, grid.im1, grid.nx, grid.ny}},
                    {"epsilons", eps},
                    {"nesting_violations", total_violations}};
    write_json(summary, config.out / "topology_summary.json");
}

}  // namespace

void run_command(Command command, const RunConfig& config) {
    fs::create_directories(config.out);
    switch (command) {
        case Command::spectrum: cmd_spectrum(config); break;
        case Command::modes: cmd_modes(config); break;
        case Command::topology: cmd_topology(config); break;
    }
}

int exit_code_for(const std::exception& error) noexcept {
    if (dynamic_cast<const InsufficientSampling*>(&error)) return 4;
    if (dynamic_cast<const std::invalid_argument*>(&error)) return 2;
    if (dynamic_cast<const fs::filesystem_error*>(&error)) return 2;
    return 3;
}

}  // namespace skinspec::cli
