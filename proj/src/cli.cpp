#include "orpg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "orpg/farfield.hpp"
#include "orpg/field_eval.hpp"
#include "orpg/mode_solver.hpp"
#include "orpg/thermo.hpp"
#include "orpg/trap_lattice.hpp"

namespace orpg {

const std::vector<std::string> kCommands = {
    "resonances", "spectrum", "field", "farfield", "traps", "phase", "scan"};

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (const auto& comment : table.comments) out += "# " + comment + "\n";
    for (size_t i = 0; i < table.columns.size(); ++i) {
        out += table.columns[i];
        out += (i + 1 < table.columns.size()) ? "," : "\n";
    }
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 < row.size()) ? "," : "\n";
        }
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json j;
    j["command"] = table.command;
    j["comments"] = table.comments;
    j["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record;
        for (size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = row[i];
        rows.push_back(std::move(record));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

ResonatorConfig resonator_from(const KeyValueDocument& doc) {
    ResonatorConfig config;
    config.half_length_l = doc.get_double("resonator.l");
    config.wavelength = doc.get_double_or("resonator.wavelength", 1.0);
    config.beta1 = doc.get_double_or("resonator.beta1", 0.0);
    config.aperture_a = doc.get_double_or("resonator.aperture_a", 0.0);
    if (doc.has("resonator.aperture_b"))
        config.aperture_b = doc.get_double("resonator.aperture_b");
    return config;
}

MirrorProfile profile_from(const KeyValueDocument& doc) {
    const std::string kind = doc.get_string("profile.kind");
    if (kind == "uniform") return UniformProfile{};
    if (kind == "sinusoidal") {
        SinusoidalProfile profile;
        profile.period_p = doc.get_double("profile.period");
        profile.beta2 = doc.get_double_or("profile.beta2", 0.0);
        profile.m = doc.get_double_or("profile.m", 1.0);
        return profile;
    }
    if (kind == "stepped") {
        SteppedProfile profile;
        profile.period_p = doc.get_double("profile.period");
        profile.beta2 = doc.get_double_or("profile.beta2", 0.0);
        profile.gamma = doc.get_double_or("profile.gamma", 1.0);
        profile.slot_tau = doc.get_double("profile.tau");
        return profile;
    }
    throw ConfigError("config line " + std::to_string(doc.line_of("profile.kind")) +
                      ": key 'profile.kind': expected uniform, sinusoidal or "
                      "stepped, got '" + kind + "'");
}

namespace {

ResonancePair pair_from(const KeyValueDocument& doc, const std::string& section) {
    const int n1 = static_cast<int>(doc.get_int(section + ".n1"));
    const int n2 = static_cast<int>(doc.get_int(section + ".n2"));
    try {
        return make_pair(n1, n2);
    } catch (const std::exception& err) {
        throw ConfigError(std::string("invalid index pair: ") + err.what());
    }
}

Table run_resonances(const KeyValueDocument& doc) {
    const auto config = resonator_from(doc);
    const auto profile = profile_from(doc);
    const int n_max = static_cast<int>(doc.get_int_or("resonances.n_max", 10));
    config.validate();
    const auto pairs = enumerate_resonances(config, profile, n_max);

    Table table;
    table.command = "resonances";
    table.comments = {"units: lengths in the wavelength unit; s dimensionless"};
    table.columns = {"n1", "n2", "parity", "s"};
    for (const auto& pair : pairs) {
        table.rows.push_back({std::to_string(pair.n1), std::to_string(pair.n2),
                              pair.parity == Parity::Odd ? "odd" : "even",
                              format_double(pair.s)});
    }
    return table;
}

Table run_spectrum(const KeyValueDocument& doc) {
    const auto config = resonator_from(doc);
    const auto profile = profile_from(doc);
    const auto* sinusoidal = std::get_if<SinusoidalProfile>(&profile);
    if (!sinusoidal)
        throw ConfigError("spectrum requires profile.kind = sinusoidal");
    config.validate();
    const double s_j = doc.get_double("spectrum.s_j");
    const int trunc = static_cast<int>(doc.get_int_or("spectrum.truncation_N", 16));
    const int j_min = static_cast<int>(doc.get_int_or("spectrum.j_min", 0));
    const int j_max = static_cast<int>(doc.get_int_or("spectrum.j_max", 0));

    const auto sys = build_bloch(*sinusoidal, config, s_j, trunc);
    const auto spectra = solve_spectrum(sys, config, j_min, j_max);

    Table table;
    table.command = "spectrum";
    table.comments = {"units: chi dimensionless; k in 1/(wavelength unit)"};
    table.columns = {"qprime", "n1", "re_chi", "im_chi", "re_k", "im_k", "Q"};
    for (const auto& entry : spectra) {
        table.rows.push_back({std::to_string(entry.q_prime),
                              std::to_string(entry.dominant_harmonic),
                              format_double(entry.chi_bar.real()),
                              format_double(entry.chi_bar.imag()),
                              format_double(entry.k.real()),
                              format_double(entry.k.imag()),
                              format_double(entry.Q)});
    }
    return table;
}

void append_grid(Table* table, const FieldGrid& grid) {
    for (size_t iz = 0; iz < grid.zeta.size(); ++iz) {
        for (size_t ix = 0; ix < grid.xi.size(); ++ix) {
            const Complex v = grid.at(ix, iz);
            table->rows.push_back({format_double(grid.xi[ix]),
                                   format_double(grid.zeta[iz]),
                                   format_double(v.real()),
                                   format_double(v.imag()),
                                   format_double(std::norm(v))});
        }
    }
}

Table run_field(const KeyValueDocument& doc) {
    const auto config = resonator_from(doc);
    const auto profile = profile_from(doc);
    config.validate();
    const auto pair = pair_from(doc, "field");
    const std::string kind = doc.get_string("field.kind");
    const double C1 = doc.get_double_or("field.C1", 1.0);
    const double C2 = doc.get_double_or("field.C2", 1.0);
    const double side = doc.get_double_or("field.side", 0.5);
    const auto geom = dimensionless(config, profile);
    const double xi_max = doc.get_double_or(
        "field.xi_max", config.aperture_a > 0.0
                            ? config.aperture_a / geom.xi_scale
                            : 2.0 * geom.p_bar);
    const double xi_min = doc.get_double_or("field.xi_min", -xi_max);
    const size_t samples = static_cast<size_t>(doc.get_int_or("field.samples", 801));
    const auto xi_grid = linspace(xi_min, xi_max, samples);

    Table table;
    table.command = "field";
    table.comments = {"units: xi, zeta dimensionless; amplitude arbitrary"};
    table.columns = {"xi", "zeta", "re", "im", "abs2"};

    if (kind == "boundary_comb") {
        const auto* sinusoidal = std::get_if<SinusoidalProfile>(&profile);
        if (!sinusoidal)
            throw ConfigError("field.kind = boundary_comb requires a sinusoidal profile");
        auto comb = nearfield_sinusoidal(pair, config, *sinusoidal, C1, C2, side);
        if (doc.has("field.reg_width"))
            comb.regularization_width = doc.get_double("field.reg_width");
        append_grid(&table, rasterize(comb, xi_grid, side));
    } else if (kind == "midplane") {
        const auto* sinusoidal = std::get_if<SinusoidalProfile>(&profile);
        if (!sinusoidal)
            throw ConfigError("field.kind = midplane requires a sinusoidal profile");
        auto comb = midplane_comb(pair, config, *sinusoidal, C1);
        if (doc.has("field.reg_width"))
            comb.regularization_width = doc.get_double("field.reg_width");
        append_grid(&table, rasterize(comb, xi_grid, 0.0));
    } else if (kind == "volume") {
        const auto* sinusoidal = std::get_if<SinusoidalProfile>(&profile);
        if (!sinusoidal)
            throw ConfigError("field.kind = volume requires a sinusoidal profile");
        const int trunc = static_cast<int>(doc.get_int_or("field.truncation_N", 32));
        const size_t zn = static_cast<size_t>(doc.get_int_or("field.zeta_samples", 41));
        const auto zeta_grid =
            linspace(doc.get_double_or("field.zeta_min", -0.5),
                     doc.get_double_or("field.zeta_max", 0.5), zn);
        const double width = doc.get_double_or("field.reg_width", -1.0);
        append_grid(&table, volume_field(pair, config, *sinusoidal, C1, xi_grid,
                                         zeta_grid, trunc, width));
    } else if (kind == "stepped" || kind == "stepped_complementary") {
        const auto* stepped = std::get_if<SteppedProfile>(&profile);
        if (!stepped)
            throw ConfigError("field.kind = " + kind + " requires a stepped profile");
        const auto field =
            nearfield_stepped(pair, config, *stepped, nullptr,
                              kind == "stepped_complementary", side, C1);
        FieldGrid grid;
        grid.xi = xi_grid;
        grid.zeta = {side};
        grid.values.reserve(xi_grid.size());
        for (double xi : xi_grid) grid.values.push_back(field.value(xi));
        append_grid(&table, grid);
    } else {
        throw ConfigError("config line " + std::to_string(doc.line_of("field.kind")) +
                          ": key 'field.kind': unknown field kind '" + kind + "'");
    }
    return table;
}

Table run_farfield(const KeyValueDocument& doc) {
    const auto config = resonator_from(doc);
    const auto profile = profile_from(doc);
    config.validate();
    const auto* stepped = std::get_if<SteppedProfile>(&profile);
    if (!stepped) throw ConfigError("farfield requires profile.kind = stepped");
    const auto pair = pair_from(doc, "farfield");
    const double z = doc.get_double("farfield.z");
    const double amplitude = doc.get_double_or("farfield.amplitude", 1.0);
    const std::string method = doc.get_string_or("farfield.method", "closed");
    const size_t samples =
        static_cast<size_t>(doc.get_int_or("farfield.samples", 2001));
    const int terms = static_cast<int>(doc.get_int_or("farfield.fourier_terms", 200));
    const double x_max = doc.get_double("farfield.x_max");
    const double x_min = doc.get_double_or("farfield.x_min", -x_max);
    const auto x_grid = linspace(x_min, x_max, samples);

    DiffractionPattern pattern;
    if (method == "closed") {
        const auto coeffs = fourier_coeffs_uniform(stepped->duty_sigma(), terms);
        pattern = intensity_closed_form(pair, config, *stepped, coeffs, amplitude,
                                        z, x_grid);
    } else if (method == "numeric") {
        const auto field = nearfield_stepped(pair, config, *stepped, nullptr, true,
                                             0.5, amplitude);
        pattern = fraunhofer(field, config.aperture_a, config.wavelength, z, x_grid);
    } else {
        throw ConfigError("farfield.method must be closed or numeric");
    }

    Table table;
    table.command = "farfield";
    table.comments = {"units: x in the wavelength unit at distance z"};
    for (const auto& warning : pattern.warnings)
        table.comments.push_back("warning: " + warning);
    for (const auto& lobe : pattern.main_lobes) {
        table.comments.push_back(
            "lobe x=" + format_double(lobe.x) + " height=" +
            format_double(lobe.height) + " width=" + format_double(lobe.width));
    }
    table.columns = {"x", "intensity", "norm_intensity"};
    for (size_t i = 0; i < pattern.x.size(); ++i) {
        table.rows.push_back({format_double(pattern.x[i]),
                              format_double(pattern.intensity[i]),
                              format_double(pattern.normalized[i])});
    }
    return table;
}

Table run_traps(const KeyValueDocument& doc) {
    const auto config = resonator_from(doc);
    const auto profile = profile_from(doc);
    config.validate();
    const auto pair = pair_from(doc, "traps");
    const int dims = static_cast<int>(doc.get_int_or("traps.dims", 3));
    const double offset = doc.get_double_or("traps.z_offset_fraction", 0.25);
    const auto lattice = node_lattice(config, profile, pair, dims, offset);

    Table table;
    table.command = "traps";
    table.comments = {
        "units: x, y, z in the wavelength unit",
        "counts: x=" + std::to_string(lattice.count_x) +
            " y=" + std::to_string(lattice.count_y) +
            " z=" + std::to_string(lattice.count_z),
        "estimate_8A2L_p3=" +
            format_double(trap_count_estimate(
                2.0 * config.aperture_a, config.length(),
                *profile_period(profile)))};
    table.columns = {"x", "y", "z"};
    for (const auto& node : lattice.nodes) {
        table.rows.push_back({format_double(node.x), format_double(node.y),
                              format_double(node.z)});
    }
    return table;
}

ThermoModel model_from(const KeyValueDocument& doc) {
    const std::string kind = doc.get_string("model.kind");
    if (kind == "dicke") {
        DickeModel model;
        model.params.epsilon = doc.get_double("model.epsilon");
        model.params.lambda = doc.get_double("model.lambda");
        model.hbar_omega = doc.get_double_or("model.hbar_omega", model.params.epsilon);
        return model;
    }
    if (kind == "order_disorder") {
        OrderDisorderParams params;
        params.hbar_Omega = doc.get_double("model.hbar_Omega");
        params.J0 = doc.get_double("model.J0");
        params.lambda = doc.get_double("model.lambda");
        params.hbar_omega = doc.get_double("model.hbar_omega");
        return params;
    }
    if (kind == "displacement") {
        if (doc.has("material.m_star")) {
            MaterialParams material;
            material.m_star_g = doc.get_double("material.m_star");
            material.ion_mass_M_g = doc.get_double("material.M");
            material.lattice_l_cm = doc.get_double("material.l");
            material.density_per_cm3 = doc.get_double("material.density");
            material.Omega0_rad_s = doc.get_double("material.Omega0");
            material.omega_q_rad_s = doc.get_double("material.omega_q");
            material.polarization_dot =
                doc.get_double_or("material.polarization_dot", 1.0);
            material.epsilon_erg = doc.get_double("material.epsilon_ev") * kErgPerEv;
            material.lambda1_erg = doc.get_double("material.lambda1_ev") * kErgPerEv;
            auto params = displacement_couplings(material);
            // Report in eV.
            params.epsilon /= kErgPerEv;
            params.hbar_Omega0 /= kErgPerEv;
            params.hbar_omega_q /= kErgPerEv;
            params.lambda1 /= kErgPerEv;
            params.lambda2 /= kErgPerEv;
            params.gamma_abs /= kErgPerEv;
            return ThermoModel(params);
        }
        DisplacementParams params;
        params.epsilon = doc.get_double("model.epsilon");
        params.hbar_Omega0 = doc.get_double("model.hbar_Omega0");
        params.hbar_omega_q = doc.get_double("model.hbar_omega_q");
        params.lambda1 = doc.get_double("model.lambda1");
        params.lambda2 = doc.get_double("model.lambda2");
        params.gamma_abs = doc.get_double_or("model.gamma_abs", 0.0);
        return params;
    }
    throw ConfigError("config line " + std::to_string(doc.line_of("model.kind")) +
                      ": key 'model.kind': expected dicke, order_disorder or "
                      "displacement, got '" + kind + "'");
}

Table run_phase(const KeyValueDocument& doc) {
    const auto model = model_from(doc);
    const double T_min = doc.get_double("phase.T_min");
    const double T_max = doc.get_double("phase.T_max");
    const long steps = doc.get_int("phase.steps");
    if (steps < 2) throw ConfigError("phase.steps must be >= 2");
    if (!(T_min > 0.0) || !(T_max > T_min))
        throw ConfigError("need 0 < phase.T_min < phase.T_max");
    double T_scale = 1.0;
    const std::string T_unit = doc.get_string_or("phase.T_unit", "energy");
    if (T_unit == "kelvin") {
        T_scale = kBoltzmannErgK / kErgPerEv;  // energies are then in eV
    } else if (T_unit != "energy") {
        throw ConfigError("phase.T_unit must be energy or kelvin");
    }

    std::vector<double> grid(static_cast<size_t>(steps));
    for (long i = 0; i < steps; ++i)
        grid[static_cast<size_t>(i)] =
            (T_min + (T_max - T_min) * static_cast<double>(i) /
                         static_cast<double>(steps - 1)) * T_scale;
    const auto curve = phase_curve(model, grid);

    Table table;
    table.command = "phase";
    table.comments = {"units: T and f in the model energy unit (k_B = 1)",
                      "T_c=" + (curve.T_c ? format_double(*curve.T_c) : "")};
    if (curve.exponent_slope)
        table.comments.push_back("exponent_slope=" +
                                 format_double(*curve.exponent_slope));
    if (const auto* disp = std::get_if<DisplacementParams>(&model)) {
        for (const auto& warning : disp->smallness_warnings())
            table.comments.push_back("warning: " + warning);
    }
    table.columns = {"T", "y2", "s_or_y2b", "phi", "f", "ordered"};
    for (const auto& pt : curve.points) {
        table.rows.push_back({format_double(pt.T), format_double(pt.y2),
                              format_double(pt.s_or_y2b), format_double(pt.phi),
                              format_double(pt.f), pt.ordered ? "1" : "0"});
    }
    return table;
}

Table dispatch(const std::string& command, const KeyValueDocument& doc);

Table run_scan(const KeyValueDocument& doc, int workers) {
    const std::string child_command = doc.get_string("scan.command");
    if (child_command == "scan") throw ConfigError("scan cannot nest");
    const std::string parameter = doc.get_string("scan.parameter");
    const double lo = doc.get_double("scan.min");
    const double hi = doc.get_double("scan.max");
    const long steps = doc.get_int("scan.steps");
    if (steps < 2) throw ConfigError("scan.steps must be >= 2");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("scan range must be finite");

    std::vector<double> values(static_cast<size_t>(steps));
    for (long i = 0; i < steps; ++i)
        values[static_cast<size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);

    std::vector<Table> children(values.size());
    std::vector<std::exception_ptr> failures(values.size());
    std::atomic<size_t> cursor{0};
    int n_workers = workers > 0 ? workers
                                : static_cast<int>(std::min<unsigned>(
                                      4, std::thread::hardware_concurrency()));
    n_workers = std::max(1, std::min<int>(n_workers, static_cast<int>(values.size())));

    const auto work = [&]() {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= values.size()) return;
            try {
                const auto child = doc.with_value(parameter, format_double(values[i]));
                // Consume scan bookkeeping so the child validation only sees
                // its own keys.
                child.get_string("scan.command");
                child.get_string("scan.parameter");
                child.get_double("scan.min");
                child.get_double("scan.max");
                child.get_int("scan.steps");
                children[i] = dispatch(child_command, child);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
    for (size_t i = 0; i < failures.size(); ++i) {
        if (failures[i]) std::rethrow_exception(failures[i]);
    }

    Table merged;
    merged.command = "scan";
    merged.comments = {"scan parameter " + parameter, "child command " + child_command};
    merged.columns.push_back(parameter);
    for (const auto& column : children.front().columns)
        merged.columns.push_back(column);
    for (size_t i = 0; i < children.size(); ++i) {
        const std::string value = format_double(values[i]);
        for (const auto& row : children[i].rows) {
            std::vector<std::string> merged_row;
            merged_row.reserve(row.size() + 1);
            merged_row.push_back(value);
            for (const auto& cell : row) merged_row.push_back(cell);
            merged.rows.push_back(std::move(merged_row));
        }
    }
    return merged;
}

Table dispatch(const std::string& command, const KeyValueDocument& doc) {
    if (doc.has("command")) doc.get_string("command");  // consumed; CLI overrides
    Table table;
    if (command == "resonances") table = run_resonances(doc);
    else if (command == "spectrum") table = run_spectrum(doc);
    else if (command == "field") table = run_field(doc);
    else if (command == "farfield") table = run_farfield(doc);
    else if (command == "traps") table = run_traps(doc);
    else if (command == "phase") table = run_phase(doc);
    else throw ConfigError("unknown command '" + command + "'");
    doc.reject_unknown_keys();
    return table;
}

}  // namespace

RunOutcome run_command(const std::string& command, const KeyValueDocument& doc,
                       const std::string& format, int workers) {
    RunOutcome outcome;
    try {
        Table table;
        if (command == "scan") {
            if (doc.has("command")) doc.get_string("command");
            // Unknown keys surface through the child runs, which see the
            // whole document.
            table = run_scan(doc, workers);
        } else {
            table = dispatch(command, doc);
        }
        if (format == "csv") outcome.output = to_csv(table);
        else if (format == "json") outcome.output = to_json(table);
        else throw ConfigError("format must be csv or json");
    } catch (const ConfigError& err) {
        outcome.exit_code = 2;
        outcome.error = err.what();
    } catch (const std::exception& err) {
        outcome.exit_code = 3;
        outcome.error = err.what();
    }
    return outcome;
}

int cli_main(int argc, char** argv) {
    std::string command, config_path, out_path;
    std::string format = "csv";
    int workers = 0;
    if (const char* env = std::getenv("ORPG_WORKERS")) workers = std::atoi(env);

    std::vector<std::string> args(argv + 1, argv + argc);
    const auto usage = []() {
        std::cerr << "usage: orpg <command> --config <path> [--out <path>]"
                  << " [--format csv|json] [--workers N]\n"
                  << "commands: resonances spectrum field farfield traps phase scan\n";
    };
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        const auto next = [&]() -> std::string {
            if (i + 1 >= args.size()) {
                throw ConfigError("option " + arg + " needs a value");
            }
            return args[++i];
        };
        try {
            if (arg == "--help" || arg == "-h") { usage(); return 0; }
            else if (arg == "--config") config_path = next();
            else if (arg == "--out") out_path = next();
            else if (arg == "--format") format = next();
            else if (arg == "--workers") workers = std::atoi(next().c_str());
            else if (!arg.empty() && arg[0] == '-') {
                std::cerr << "error: unknown option " << arg << "\n";
                return 2;
            } else if (command.empty()) command = arg;
            else { std::cerr << "error: extra argument " << arg << "\n"; return 2; }
        } catch (const ConfigError& err) {
            std::cerr << "error: " << err.what() << "\n";
            return 2;
        }
    }

    if (config_path.empty()) {
        std::cerr << "error: --config is required\n";
        usage();
        return 2;
    }

    KeyValueDocument doc;
    try {
        doc = KeyValueDocument::parse_file(config_path);
        if (command.empty()) command = doc.get_string("command");
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    const RunOutcome outcome = run_command(command, doc, format, workers);
    if (outcome.exit_code != 0) {
        std::cerr << "error: " << outcome.error << "\n";
        return outcome.exit_code;
    }

    if (out_path.empty()) {
        std::cout << outcome.output;
    } else {
        namespace fs = std::filesystem;
        const fs::path target(out_path);
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                std::cerr << "error: cannot write " << tmp << "\n";
                return 2;
            }
            out << outcome.output;
        }
        std::error_code ec;
        fs::rename(tmp, target, ec);
        if (ec) {
            std::cerr << "error: cannot move output into place: " << ec.message()
                      << "\n";
            return 2;
        }
    }
    return 0;
}

}  // namespace orpg
