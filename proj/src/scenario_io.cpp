#include "bresse/scenario_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "bresse/types.hpp"

namespace bresse {

namespace {

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, KeyValue>;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class Diagnostics {
public:
    explicit Diagnostics(std::string origin) : origin_(std::move(origin)) {}
    void add(int line, const std::string& message) {
        std::ostringstream oss;
        oss << origin_;
        if (line > 0) oss << ":" << line;
        oss << ": " << message;
        items_.push_back(oss.str());
    }
    void raise_if_any() const {
        if (items_.empty()) return;
        std::ostringstream oss;
        oss << "scenario file problems:";
        for (const auto& item : items_) oss << "\n  - " << item;
        throw ConfigError(oss.str());
    }

private:
    std::string origin_;
    std::vector<std::string> items_;
};

class SectionReader {
public:
    SectionReader(Section* section, const std::string& name, Diagnostics* diag)
        : section_(section), name_(name), diag_(diag) {}

    bool has(const std::string& key) const {
        return section_ && section_->count(key) > 0;
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        auto& kv = (*section_)[key];
        kv.used = true;
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(kv.value.c_str(), &end);
        if (errno != 0 || end == kv.value.c_str() || *end != '\0') {
            diag_->add(kv.line, "key '" + key + "' in [" + name_ +
                                    "] is not a number: '" + kv.value + "'");
            return fallback;
        }
        return v;
    }

    long integer(const std::string& key, long fallback) {
        const double v = number(key, static_cast<double>(fallback));
        return static_cast<long>(v);
    }

    std::string word(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        auto& kv = (*section_)[key];
        kv.used = true;
        return kv.value;
    }

private:
    Section* section_;
    std::string name_;
    Diagnostics* diag_;
};

DampingProfile parse_profile(SectionReader& reader, const std::string& name, double length,
                             Diagnostics& diag) {
    const std::string kind = reader.word("kind", "zero");
    const double d0 = reader.number("d0", 1.0);
    const double alpha = reader.number("alpha", 0.0);
    const double beta = reader.number("beta", length);
    const double ramp = reader.number("ramp", 0.0);
    try {
        if (kind == "zero") return DampingProfile::zero(length);
        if (kind == "global") return DampingProfile::global(d0, length);
        if (kind == "indicator") return DampingProfile::indicator(d0, alpha, beta, length);
        if (kind == "smoothstep")
            return DampingProfile::smoothstep(d0, alpha, beta, ramp, length);
        diag.add(0, "[" + name + "] kind '" + kind +
                        "' is not one of zero|global|indicator|smoothstep");
    } catch (const std::exception& e) {
        diag.add(0, "[" + name + "]: " + e.what());
    }
    return DampingProfile::zero(length);
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& origin) {
    Diagnostics diag(origin);
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;

    static const std::vector<std::string> known_sections = {
        "beam", "damping", "damping.d1", "damping.d2", "damping.d3", "bc", "run"};

    std::string line, current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                diag.add(line_no, "malformed section header: '" + line + "'");
                continue;
            }
            current = trim(line.substr(1, line.size() - 2));
            sections[current];
            section_lines[current] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            diag.add(line_no, "expected 'key = value', got '" + line + "'");
            continue;
        }
        if (current.empty()) {
            diag.add(line_no, "key outside any section: '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (sections[current].count(key))
            diag.add(line_no, "duplicate key '" + key + "' in [" + current + "]");
        sections[current][key] = {value, line_no, false};
    }

    for (const auto& [name, sec] : sections) {
        if (std::find(known_sections.begin(), known_sections.end(), name) ==
            known_sections.end())
            diag.add(section_lines[name], "unknown section [" + name + "]");
    }

    auto section = [&](const std::string& name) -> Section* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };

    ScenarioConfig cfg;

    SectionReader beam(section("beam"), "beam", &diag);
    cfg.params.rho1 = beam.number("rho1", 1.0);
    cfg.params.rho2 = beam.number("rho2", 1.0);
    cfg.params.k1 = beam.number("k1", 1.0);
    cfg.params.k2 = beam.number("k2", 1.0);
    cfg.params.k3 = beam.number("k3", 1.0);
    cfg.params.ell = beam.number("ell", 1.0);
    cfg.params.length = beam.number("length", 1.0);

    SectionReader damping(section("damping"), "damping", &diag);
    const std::string model = damping.word("model", "kelvin_voigt");
    if (model == "kelvin_voigt") {
        cfg.damping.model = DampingModel::KelvinVoigt;
    } else if (model == "viscous") {
        cfg.damping.model = DampingModel::Viscous;
    } else {
        diag.add(0, "[damping] model '" + model + "' is not kelvin_voigt|viscous");
    }
    for (int i = 1; i <= 3; ++i) {
        const std::string name = "damping.d" + std::to_string(i);
        SectionReader reader(section(name), name, &diag);
        DampingProfile profile = parse_profile(reader, name, cfg.params.length, diag);
        if (i == 1) cfg.damping.d1 = std::move(profile);
        if (i == 2) cfg.damping.d2 = std::move(profile);
        if (i == 3) cfg.damping.d3 = std::move(profile);
    }

    SectionReader bc(section("bc"), "bc", &diag);
    const std::string bc_type = bc.word("type", "dddd");
    if (bc_type == "dddd") {
        cfg.bc = BoundaryCondition::FullDirichlet;
    } else if (bc_type == "dnnd") {
        cfg.bc = BoundaryCondition::DirichletNeumannNeumann;
    } else {
        diag.add(0, "[bc] type '" + bc_type + "' is not dddd|dnnd");
    }

    SectionReader run(section("run"), "run", &diag);
    cfg.run.n_elements = static_cast<int>(run.integer("n_elements", 100));
    cfg.run.dt = run.number("dt", 0.0);
    cfg.run.t_max = run.number("tmax", 20.0);
    cfg.run.sample_every = static_cast<int>(run.integer("sample_every", 1));
    cfg.run.lambda_min = run.number("lambda_min", 0.0);
    cfg.run.lambda_max = run.number("lambda_max", 0.0);
    cfg.run.sweep_samples = static_cast<int>(run.integer("samples", 48));
    cfg.run.seed = static_cast<std::uint64_t>(run.integer("seed", 0));

    for (const auto& [name, sec] : sections) {
        for (const auto& [key, kv] : sec) {
            if (!kv.used)
                diag.add(kv.line, "unknown key '" + key + "' in [" + name + "]");
        }
    }
    diag.raise_if_any();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    return parse_scenario(in, path);
}

std::string canonical_description(const ScenarioConfig& cfg) {
    std::ostringstream oss;
    oss.precision(17);
    const auto& p = cfg.params;
    oss << "beam " << p.rho1 << " " << p.rho2 << " " << p.k1 << " " << p.k2 << " " << p.k3
        << " " << p.ell << " " << p.length << "\n";
    oss << "model " << to_string(cfg.damping.model) << "\n";
    for (int i = 1; i <= 3; ++i) {
        oss << "d" << i;
        for (const auto& piece : cfg.damping.profile(i).pieces()) {
            oss << " [" << piece.x0 << "," << piece.x1 << ":";
            for (double c : piece.coeffs) oss << c << ",";
            oss << "]";
        }
        oss << "\n";
    }
    oss << "bc " << to_string(cfg.bc) << "\n";
    const auto& r = cfg.run;
    oss << "run " << r.n_elements << " " << r.dt << " " << r.t_max << " " << r.sample_every
        << " " << r.lambda_min << " " << r.lambda_max << " " << r.sweep_samples << " "
        << r.seed << "\n";
    return oss.str();
}

}  // namespace bresse
