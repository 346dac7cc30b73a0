#include "tomokit/config.hpp"

#include <fstream>
#include <sstream>

#include "tomokit/errors.hpp"

namespace tomokit {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (...) {
            throw ArgumentError("config: bad number '" + tok + "' in " + key);
        }
    }
    return out;
}

double parse_num(const std::string& s, const std::string& key) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ArgumentError("config: bad number '" + s + "' for " + key);
    }
}

} // namespace

RunConfig RunConfig::from_entries(
    const std::vector<std::pair<std::string, std::string>>& entries) {
    RunConfig c;
    bool modes_given = false;
    for (const auto& [key, value] : entries) {
        if (key == "kind") {
            if (value != "vacuum" && value != "coherent" && value != "cat")
                throw ArgumentError("config: unknown kind '" + value + "'");
            c.kind = value;
        } else if (key == "modes") {
            c.modes = (int)parse_num(value, key);
            modes_given = true;
        } else if (key == "alpha_re") {
            c.alpha_re = parse_list(value, key);
        } else if (key == "alpha_im") {
            c.alpha_im = parse_list(value, key);
        } else if (key == "parity") {
            double p = parse_num(value, key);
            if (p != 1.0 && p != -1.0)
                throw ArgumentError("config: parity must be +1 or -1");
            c.parity = (int)p;
        } else if (key == "grid.min") {
            c.grid_min = parse_num(value, key);
        } else if (key == "grid.max") {
            c.grid_max = parse_num(value, key);
        } else if (key == "grid.points") {
            c.grid_points = (int)parse_num(value, key);
        } else if (key == "prior") {
            if (value != "gaussian" && value.rfind("custom:", 0) != 0)
                throw ArgumentError("config: prior must be gaussian or "
                                    "custom:<path>");
            c.prior = value;
        } else if (key == "seed") {
            c.seed = (unsigned long)parse_num(value, key);
        } else if (key.rfind("tol.", 0) == 0) {
            c.tolerances[key.substr(4)] = parse_num(value, key);
        } else {
            throw ArgumentError("config: unknown key '" + key + "'");
        }
    }
    if (!c.alpha_re.empty() && !modes_given)
        c.modes = (int)c.alpha_re.size();
    if (c.modes < 1)
        throw ArgumentError("config: modes must be >= 1");
    if (!c.alpha_im.empty() && c.alpha_im.size() != c.alpha_re.size())
        throw ArgumentError("config: alpha_im length must match alpha_re");
    if (!c.alpha_re.empty() && (int)c.alpha_re.size() != c.modes)
        throw ArgumentError("config: alpha_re length must match modes");
    if (!(c.grid_min < c.grid_max) || c.grid_points < 2)
        throw ArgumentError("config: bad grid specification");
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("config: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("config: line " + std::to_string(lineno) +
                                " is not key = value");
        entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return from_entries(entries);
}

std::vector<cdouble> RunConfig::alphas() const {
    std::vector<cdouble> a(modes, cdouble(0.0, 0.0));
    for (std::size_t j = 0; j < alpha_re.size(); ++j) a[j].real(alpha_re[j]);
    for (std::size_t j = 0; j < alpha_im.size(); ++j) a[j].imag(alpha_im[j]);
    return a;
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

CoherentState RunConfig::coherent() const { return CoherentState(alphas()); }

CatState RunConfig::cat() const { return CatState(alphas(), parity); }

} // namespace tomokit
