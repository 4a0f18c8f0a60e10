#include "ttb/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ttb/errors.hpp"

namespace ttb {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Sections parse_sections(const std::string& text, const std::string& origin) {
    Sections out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ":" +
                                  std::to_string(line.find('[') + 1) +
                                  ": unterminated section header");
            }
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty()) {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            }
            out.try_emplace(section);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ":" +
                              std::to_string(line.find(body.front()) + 1) +
                              ": expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        }
        out[section][key] = Entry{value, lineno, false};
    }
    return out;
}

void apply_overrides(Sections& sections, const std::vector<std::string>& overrides,
                     const std::string& origin) {
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        const auto dot = ov.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
            throw ConfigError(origin + ": override '" + ov + "' must be section.key=value");
        }
        const std::string section = trim(ov.substr(0, dot));
        const std::string key = trim(ov.substr(dot + 1, eq - dot - 1));
        const std::string value = trim(ov.substr(eq + 1));
        if (section.empty() || key.empty() || value.empty()) {
            throw ConfigError(origin + ": override '" + ov + "' must be section.key=value");
        }
        sections[section][key] = Entry{value, 0, false};
    }
}

class Reader {
public:
    Reader(Sections& sections, std::string origin)
        : sections_(sections), origin_(std::move(origin)) {}

    bool has(const std::string& section, const std::string& key) {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return fallback;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return fallback;
        k->second.used = true;
        return k->second.value;
    }

    std::string require_string(const std::string& section, const std::string& key) {
        if (!has(section, key)) {
            throw ConfigError(origin_ + ": missing required key " + section + "." + key);
        }
        return get_string(section, key, "");
    }

    double parse_number(const std::string& section, const std::string& key) {
        auto& entry = sections_[section][key];
        entry.used = true;
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(entry.value, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != entry.value.size()) {
            throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": key " + section +
                              "." + key + " has non-numeric value '" + entry.value + "'");
        }
        return value;
    }

    double get_number(const std::string& section, const std::string& key, double fallback) {
        if (!has(section, key)) return fallback;
        return parse_number(section, key);
    }

    double require_number(const std::string& section, const std::string& key) {
        if (!has(section, key)) {
            throw ConfigError(origin_ + ": missing required key " + section + "." + key);
        }
        return parse_number(section, key);
    }

    int require_int(const std::string& section, const std::string& key) {
        const double v = require_number(section, key);
        if (v != std::floor(v)) {
            throw ConfigError(origin_ + ": key " + section + "." + key + " must be an integer");
        }
        return static_cast<int>(v);
    }

    void require_section(const std::string& section) {
        if (sections_.find(section) == sections_.end()) {
            throw ConfigError(origin_ + ": missing required section [" + section + "]");
        }
    }

    /// Every key must have been consumed by now; silent typos in
    /// physical parameters are dangerous.
    void reject_unknown() const {
        for (const auto& [section, keys] : sections_) {
            for (const auto& [key, entry] : keys) {
                if (!entry.used) {
                    throw ConfigError(origin_ + ":" + std::to_string(entry.line) +
                                      ": unknown key " + section + "." + key);
                }
            }
        }
    }

private:
    Sections& sections_;
    std::string origin_;
};

BeamSection read_section(Reader& r, const std::string& name) {
    BeamSection s;
    s.rigidity = r.require_number(name, "modulus") * r.require_number(name, "inertia");
    s.mass_per_length = r.require_number(name, "mass");
    s.damping_per_length = r.get_number(name, "damping", 0.0);
    return s;
}

}  // namespace

Probe parse_probe(const std::string& token, const Mesh& mesh) {
    const std::string t = trim(token);
    if (t == "contact_force") {
        return Probe{ProbeTarget::Body, ProbeQuantity::ContactForce, 0.0, false};
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("probe '" + t + "': expected target:quantity[@position]");
    }
    Probe p;
    const std::string target = t.substr(0, colon);
    if (target == "bridge") p.target = ProbeTarget::Bridge;
    else if (target == "rail") p.target = ProbeTarget::Rail;
    else if (target == "body") p.target = ProbeTarget::Body;
    else throw ConfigError("probe '" + t + "': unknown target '" + target + "'");

    std::string rest = t.substr(colon + 1);
    std::string pos;
    if (const auto at = rest.find('@'); at != std::string::npos) {
        pos = rest.substr(at + 1);
        rest = rest.substr(0, at);
    }
    if (rest == "disp") p.quantity = ProbeQuantity::Displacement;
    else if (rest == "vel") p.quantity = ProbeQuantity::Velocity;
    else if (rest == "acc") p.quantity = ProbeQuantity::Acceleration;
    else throw ConfigError("probe '" + t + "': unknown quantity '" + rest + "'");

    if (p.target == ProbeTarget::Body) {
        if (!pos.empty()) throw ConfigError("probe '" + t + "': body probes take no position");
        return p;
    }
    if (pos.empty()) {
        throw ConfigError("probe '" + t + "': beam probes need @position or @wheel");
    }
    if (pos == "wheel") {
        p.under_wheel = true;
        return p;
    }
    std::size_t used = 0;
    try {
        p.x = std::stod(pos, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != pos.size()) {
        throw ConfigError("probe '" + t + "': bad position '" + pos + "'");
    }
    if (p.x < 0.0 || p.x > mesh.span()) {
        throw ConfigError("probe '" + t + "': position outside the span");
    }
    return p;
}

std::string render_probe(const Probe& probe) { return probe.name(); }

SimConfig parse_config_text(const std::string& text, const std::string& origin,
                            const std::string& base_dir,
                            const std::vector<std::string>& overrides) {
    Sections sections = parse_sections(text, origin);
    apply_overrides(sections, overrides, origin);
    Reader r(sections, origin);

    for (const char* required : {"mesh", "rail", "bridge", "vehicle"}) {
        r.require_section(required);
    }

    SimConfig cfg;
    cfg.mesh.n = r.require_int("mesh", "elements");
    const double span = r.require_number("mesh", "span");
    if (cfg.mesh.n < 2 || !(span > 0.0)) {
        throw ConfigError(origin + ": mesh needs elements >= 2 and span > 0");
    }
    cfg.mesh.l = span / cfg.mesh.n;
    cfg.mesh.k_bed = r.get_number("mesh", "bed_stiffness", 0.0);
    cfg.mesh.c_bed = r.get_number("mesh", "bed_damping", 0.0);
    cfg.mesh.rail = read_section(r, "rail");
    cfg.mesh.bridge = read_section(r, "bridge");

    cfg.vehicle.m_body = r.require_number("vehicle", "body_mass");
    cfg.vehicle.m_wheel = r.get_number("vehicle", "wheel_mass", 0.0);
    cfg.vehicle.k_susp = r.get_number("vehicle", "suspension_stiffness", 0.0);
    cfg.vehicle.c_susp = r.get_number("vehicle", "suspension_damping", 0.0);
    cfg.vehicle.v = r.require_number("vehicle", "speed");
    cfg.vehicle.a = r.get_number("vehicle", "acceleration", 0.0);
    cfg.gravity = r.get_number("vehicle", "gravity", 9.81);
    cfg.x0 = r.get_number("vehicle", "entry_offset", 0.0);

    const std::string profile = r.get_string("track", "profile", "smooth");
    if (profile == "smooth") {
        cfg.profile = Profile::smooth();
    } else if (profile == "sinusoid") {
        cfg.profile = Profile::sinusoid(r.require_number("track", "amplitude"),
                                        r.require_number("track", "wavelength"),
                                        r.get_number("track", "phase", 0.0));
    } else if (profile == "file") {
        std::filesystem::path p(r.require_string("track", "path"));
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        cfg.profile = Profile::from_file(p.string());
    } else {
        throw ConfigError(origin + ": track.profile must be smooth, sinusoid or file");
    }

    cfg.newmark.dt = r.get_number("integrator", "dt", 0.005);
    cfg.newmark.beta = r.get_number("integrator", "beta", 0.25);
    cfg.newmark.delta = r.get_number("integrator", "delta", 0.5);
    const std::string accel = r.get_string("integrator", "accel_update", "equilibrium");
    if (accel == "equilibrium") cfg.accel_update = AccelUpdate::Equilibrium;
    else if (accel == "increment") cfg.accel_update = AccelUpdate::Increment;
    else throw ConfigError(origin + ": integrator.accel_update must be equilibrium or increment");

    cfg.t_end = r.get_number("output", "t_end", -1.0);
    cfg.tail = r.get_number("output", "tail", 0.0);
    if (r.has("output", "probes")) {
        std::istringstream ps(r.get_string("output", "probes", ""));
        std::string token;
        while (std::getline(ps, token, ',')) {
            cfg.probes.push_back(parse_probe(token, cfg.mesh));
        }
        if (cfg.probes.empty()) throw ConfigError(origin + ": output.probes is empty");
    }

    r.reject_unknown();
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    const std::string base = std::filesystem::path(path).parent_path().string();
    return parse_config_text(text.str(), path, base, overrides);
}

std::string format_double(double value) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::stod(buf) == value) break;
    }
    return buf;
}

std::vector<std::pair<std::string, std::string>> echo_config(const SimConfig& config) {
    std::vector<std::pair<std::string, std::string>> kv;
    auto num = [&](const std::string& key, double v) { kv.emplace_back(key, format_double(v)); };

    kv.emplace_back("mesh.elements", std::to_string(config.mesh.n));
    num("mesh.span", config.mesh.span());
    num("mesh.bed_stiffness", config.mesh.k_bed);
    num("mesh.bed_damping", config.mesh.c_bed);
    for (const auto& [name, sec] :
         {std::pair<const char*, const BeamSection*>{"rail", &config.mesh.rail},
          std::pair<const char*, const BeamSection*>{"bridge", &config.mesh.bridge}}) {
        num(std::string(name) + ".rigidity", sec->rigidity);
        num(std::string(name) + ".mass", sec->mass_per_length);
        num(std::string(name) + ".damping", sec->damping_per_length);
    }
    num("vehicle.body_mass", config.vehicle.m_body);
    num("vehicle.wheel_mass", config.vehicle.m_wheel);
    num("vehicle.suspension_stiffness", config.vehicle.k_susp);
    num("vehicle.suspension_damping", config.vehicle.c_susp);
    num("vehicle.speed", config.vehicle.v);
    num("vehicle.acceleration", config.vehicle.a);
    num("vehicle.gravity", config.gravity);
    num("vehicle.entry_offset", config.x0);
    kv.emplace_back("track.profile", config.profile.is_smooth() ? "smooth" : "custom");
    num("integrator.dt", config.newmark.dt);
    num("integrator.beta", config.newmark.beta);
    num("integrator.delta", config.newmark.delta);
    kv.emplace_back("integrator.accel_update",
                    config.accel_update == AccelUpdate::Equilibrium ? "equilibrium" : "increment");
    num("output.t_end", config.duration());
    num("output.tail", config.tail);
    std::string probes;
    const auto plist = config.probes.empty() ? default_probes(config.mesh) : config.probes;
    for (const auto& p : plist) {
        if (!probes.empty()) probes += ",";
        probes += render_probe(p);
    }
    kv.emplace_back("output.probes", probes);
    return kv;
}

void write_output_table(std::ostream& out, const SimConfig& config, const TimeHistory& history) {
    out << "# ttbsim output\n";
    for (const auto& [key, value] : echo_config(config)) {
        out << "# " << key << " = " << value << "\n";
    }
    out << "t [s]";
    for (std::size_t c = 0; c < history.names.size(); ++c) {
        out << "," << history.names[c] << " [" << history.units[c] << "]";
    }
    out << "\n";
    char buf[40];
    for (std::size_t i = 0; i < history.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", history.times[i]);
        out << buf;
        for (const auto& column : history.columns) {
            std::snprintf(buf, sizeof buf, ",%.17g", column[i]);
            out << buf;
        }
        out << "\n";
    }
}

SimConfig benchmark_config() {
    SimConfig cfg;
    cfg.mesh.n = 10;
    cfg.mesh.l = 3.0;
    cfg.mesh.rail = BeamSection{2.06e11 * 1e-10, 1e-7, 0.0};
    cfg.mesh.bridge = BeamSection{2.87e9 * 2.90, 2.303e3, 0.0};
    cfg.mesh.k_bed = 1e13;
    cfg.mesh.c_bed = 0.0;
    cfg.vehicle.m_body = 5750.0;
    cfg.vehicle.m_wheel = 0.0;
    cfg.vehicle.k_susp = 1.595e6;
    cfg.vehicle.c_susp = 0.0;
    cfg.vehicle.v = 27.78;
    cfg.vehicle.a = 0.0;
    cfg.newmark = NewmarkParams{0.25, 0.5, 0.005};
    return cfg;
}

}  // namespace ttb
