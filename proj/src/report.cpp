#include "bresse/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bresse/scenario_io.hpp"

namespace bresse {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF endings everywhere
    if (!out) throw ConfigError("cannot write output file: " + path);
    return out;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string RunManifest::comment_line() const {
    std::ostringstream oss;
    oss << "# manifest hash=" << hex64(config_hash) << " subcommand=" << subcommand
        << " seed=" << seed << " version=" << version;
    return oss.str();
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t manifest_hash(const ScenarioConfig& cfg, const std::string& subcommand,
                            std::uint64_t seed) {
    std::ostringstream oss;
    oss << canonical_description(cfg) << "subcommand " << subcommand << "\nseed " << seed
        << "\nversion " << kToolVersion << "\n";
    return fnv1a(oss.str());
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_trace_csv(const std::string& path, const EnergyTrace& trace,
                     const RunManifest& manifest, const DecayFit* fit) {
    auto out = open_out(path);
    out << manifest.comment_line() << "\n";
    out << "t,energy,dissipation\n";
    for (const auto& s : trace.samples)
        out << format_double(s.t) << "," << format_double(s.energy) << ","
            << format_double(s.dissipation) << "\n";
    if (fit) out << "# " << fit->describe() << "\n";
}

void write_sweep_csv(const std::string& path, const std::vector<ResolventSample>& sweep,
                     const RunManifest& manifest) {
    auto out = open_out(path);
    out << manifest.comment_line() << "\n";
    out << "lambda,resolvent_norm\n";
    for (const auto& s : sweep)
        out << format_double(s.lambda) << "," << format_double(s.norm) << "\n";
}

void write_witness_csv(const std::string& path, const std::vector<WitnessSample>& samples,
                       const RunManifest& manifest) {
    auto out = open_out(path);
    out << manifest.comment_line() << "\n";
    out << "n,lambda,re_A,im_A,re_B,im_B,re_C,im_C,norm_V,norm_residual\n";
    for (const auto& s : samples) {
        out << s.n << "," << format_double(s.lambda) << "," << format_double(s.a.real())
            << "," << format_double(s.a.imag()) << "," << format_double(s.b.real()) << ","
            << format_double(s.b.imag()) << "," << format_double(s.c.real()) << ","
            << format_double(s.c.imag()) << "," << format_double(s.norm_state) << ","
            << format_double(s.norm_residual) << "\n";
    }
}

void write_spectrum_csv(const std::string& path, const std::vector<Complex>& eigenvalues,
                        const RunManifest& manifest) {
    auto out = open_out(path);
    out << manifest.comment_line() << "\n";
    out << "re,im\n";
    for (const auto& z : eigenvalues)
        out << format_double(z.real()) << "," << format_double(z.imag()) << "\n";
}

namespace {

void write_triplets(std::ofstream& out, const Matrix& m, int row0, int col0) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0)
                out << row0 + i << " " << col0 + j << " " << format_double(m(i, j)) << "\n";
}

}  // namespace

void dump_operator_matrices(const DiscreteOperator& op, const std::string& dir,
                            const RunManifest& manifest) {
    auto dump_one = [&](const std::string& name, const Matrix& m) {
        auto out = open_out(dir + "/" + name + ".coo");
        out << manifest.comment_line() << "\n";
        write_triplets(out, m, 0, 0);
    };
    dump_one("M", op.mass());
    dump_one("K", op.stiffness());
    dump_one("C", op.damping());
    // G = blockdiag(K, M) on the first-order state.
    auto out = open_out(dir + "/G.coo");
    out << manifest.comment_line() << "\n";
    const int n = op.displacement_dofs();
    write_triplets(out, op.stiffness(), 0, 0);
    write_triplets(out, op.mass(), n, n);
}

void write_trace_plot_script(const std::string& path, const std::string& trace_csv) {
    auto out = open_out(path);
    out << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set terminal pngcairo size 900,600\n"
        << "set key left bottom\n"
        << "set output 'energy_log.png'\n"
        << "set xlabel 't'\n"
        << "set ylabel 'E(t)'\n"
        << "set logscale y\n"
        << "plot '" << trace_csv << "' using 1:2 with lines title 'energy'\n"
        << "set output 'energy_loglog.png'\n"
        << "set logscale xy\n"
        << "plot '" << trace_csv << "' using 1:2 with lines title 'energy'\n";
}

void write_sweep_plot_script(const std::string& path, const std::string& sweep_csv) {
    auto out = open_out(path);
    out << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set terminal pngcairo size 900,600\n"
        << "set output 'resolvent.png'\n"
        << "set xlabel 'lambda'\n"
        << "set ylabel '||(i lambda - A)^{-1}||'\n"
        << "set logscale xy\n"
        << "plot '" << sweep_csv << "' using 1:2 with linespoints title 'resolvent norm'\n";
}

}  // namespace bresse
