#include "condbell/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace condbell::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fieldError(const std::string& source, const std::string& field, const std::string& what) {
    throw ConfigParseError(source + ": field '" + field + "': " + what);
}

void rejectUnknownKeys(const json& obj, const std::set<std::string>& allowed, const std::string& source,
                       const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) fieldError(source, path.empty() ? key : path + "." + key, "unknown key");
    }
}

const json& member(const json& obj, const std::string& key, const std::string& source, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fieldError(source, path, "missing");
    return *it;
}

double number(const json& v, const std::string& source, const std::string& path) {
    if (!v.is_number()) fieldError(source, path, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

std::array<double, 2> pair(const json& v, const std::string& source, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fieldError(source, path, "expected an array of 2 numbers");
    return {number(v[0], source, path + "[0]"), number(v[1], source, path + "[1]")};
}

SettingDistribution parseSettings(const json& s, const std::string& source, double tol) {
    if (!s.is_object()) fieldError(source, "settings", "expected an object");
    if (s.size() != 1) fieldError(source, "settings", "expected exactly one of 'uniform', 'weights', 'product'");
    try {
        if (s.contains("uniform")) {
            const json& u = s["uniform"];
            if (!u.is_boolean() || !u.get<bool>()) fieldError(source, "settings.uniform", "expected true");
            return SettingDistribution::uniform();
        }
        if (s.contains("weights")) {
            const json& w = s["weights"];
            if (!w.is_array() || w.size() != 2) fieldError(source, "settings.weights", "expected a 2x2 array");
            Weights m;
            for (int r = 0; r < 2; ++r) {
                const auto row =
                    pair(w[static_cast<std::size_t>(r)], source, "settings.weights[" + std::to_string(r) + "]");
                m(r, 0) = row[0];
                m(r, 1) = row[1];
            }
            return SettingDistribution(m, tol);
        }
        if (s.contains("product")) {
            const json& p = s["product"];
            if (!p.is_object()) fieldError(source, "settings.product", "expected an object");
            rejectUnknownKeys(p, {"a1", "b1"}, source, "settings.product");
            const double pa = number(member(p, "a1", source, "settings.product.a1"), source, "settings.product.a1");
            const double pb = number(member(p, "b1", source, "settings.product.b1"), source, "settings.product.b1");
            if (pa < 0.0 || pa > 1.0 || pb < 0.0 || pb > 1.0) {
                throw ConfigValidationError(source + ": field 'settings.product': probabilities must lie in [0,1]");
            }
            return SettingDistribution::product(pa, pb, tol);
        }
    } catch (const InvalidDistribution& e) {
        throw ConfigValidationError(source + ": field 'settings': " + e.what());
    }
    fieldError(source, "settings", "expected one of 'uniform', 'weights', 'product'");
}

ConditionalTable parseTable(const json& t, const std::string& source, double tol) {
    if (!t.is_object()) fieldError(source, "table", "expected an object with keys 11, 12, 21, 22");
    rejectUnknownKeys(t, {"11", "12", "21", "22"}, source, "table");
    std::array<OutcomeBlock, 4> blocks;
    for (int i : kSettings) {
        for (int j : kSettings) {
            const std::string key = std::to_string(i) + std::to_string(j);
            const std::string path = "table." + key;
            const json& v = member(t, key, source, path);
            if (!v.is_array() || v.size() != 4) {
                fieldError(source, path, "expected [q(+,+), q(+,-), q(-,+), q(-,-)]");
            }
            OutcomeBlock q;
            q << number(v[0], source, path + "[0]"), number(v[1], source, path + "[1]"),
                number(v[2], source, path + "[2]"), number(v[3], source, path + "[3]");
            blocks[pairIndex(i, j)] = q;
        }
    }
    try {
        return ConditionalTable(blocks, tol);
    } catch (const InvalidDistribution& e) {
        throw ConfigValidationError(source + ": field 'table': " + e.what());
    }
}

struct AngleInput {
    AngleSettings angles;
    Convention convention = Convention::Photon;
};

AngleInput parseAngles(const json& g, const std::string& source) {
    if (!g.is_object()) fieldError(source, "angles", "expected an object");
    rejectUnknownKeys(g, {"a", "b", "unit", "convention"}, source, "angles");
    auto ta = pair(member(g, "a", source, "angles.a"), source, "angles.a");
    auto tb = pair(member(g, "b", source, "angles.b"), source, "angles.b");
    std::string unit = "deg";
    if (g.contains("unit")) {
        if (!g["unit"].is_string()) fieldError(source, "angles.unit", "expected \"deg\" or \"rad\"");
        unit = g["unit"].get<std::string>();
    }
    AngleInput input;
    if (unit == "deg") {
        input.angles = AngleSettings::degrees(ta[0], ta[1], tb[0], tb[1]);
    } else if (unit == "rad") {
        input.angles = AngleSettings{ta, tb};
    } else {
        fieldError(source, "angles.unit", "expected \"deg\" or \"rad\", got \"" + unit + "\"");
    }
    if (g.contains("convention")) {
        const json& c = g["convention"];
        const std::string name = c.is_string() ? c.get<std::string>() : "";
        if (name == "photon") {
            input.convention = Convention::Photon;
        } else if (name == "spin") {
            input.convention = Convention::Spin;
        } else {
            fieldError(source, "angles.convention", "expected \"photon\" or \"spin\"");
        }
    }
    for (double t : {ta[0], ta[1], tb[0], tb[1]}) {
        if (!std::isfinite(t)) throw ConfigValidationError(source + ": field 'angles': angles must be finite");
    }
    return input;
}

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

Config parseConfig(const std::string& text, const std::string& source, std::optional<double> toleranceOverride) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        // Keep only the human part after the library's "[json.exception...] " prefix.
        if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
        throw ConfigParseError(source + ":" + locate(text, e.byte) + ": " + msg);
    }
    if (!doc.is_object()) throw ConfigParseError(source + ":1:1: expected a JSON object at top level");
    rejectUnknownKeys(doc, {"settings", "table", "angles", "tolerance"}, source, "");

    double tol = kDefaultTolerance;
    if (doc.contains("tolerance")) {
        tol = number(doc["tolerance"], source, "tolerance");
        if (!(tol >= 0.0)) throw ConfigValidationError(source + ": field 'tolerance': must be nonnegative");
    }
    if (toleranceOverride) {
        tol = *toleranceOverride;
        if (!(tol >= 0.0) || !std::isfinite(tol))
            throw ConfigValidationError("--tolerance must be a nonnegative number");
    }

    const bool hasTable = doc.contains("table");
    const bool hasAngles = doc.contains("angles");
    if (hasTable == hasAngles) {
        throw ConfigParseError(source + ": exactly one of 'table' and 'angles' must be given");
    }

    SettingDistribution settings = parseSettings(member(doc, "settings", source, "settings"), source, tol);
    if (hasTable) {
        return Config{settings, parseTable(doc["table"], source, tol), std::nullopt, Convention::Photon, tol, source};
    }
    const AngleInput input = parseAngles(doc["angles"], source);
    return Config{settings, singletTable(input.angles, input.convention), input.angles, input.convention, tol, source};
}

Config loadConfig(const std::string& path, std::optional<double> toleranceOverride) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path + "'");
    return parseConfig(buf.str(), path, toleranceOverride);
}

}  // namespace condbell::cli
