#include "ebnd/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ebnd/errors.hpp"

namespace ebnd {

using nlohmann::json;

Spectrum parse_spectrum_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("spectrum JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("levels") || !doc["levels"].is_array())
        throw ParseError("spectrum JSON needs a 'levels' array");

    std::vector<double> levels;
    levels.reserve(doc["levels"].size());
    for (const auto& v : doc["levels"]) {
        if (!v.is_number()) throw ParseError("spectrum levels must be numbers");
        levels.push_back(v.get<double>());
    }

    std::optional<TailRule> rule;
    if (doc.contains("generator")) {
        const auto& g = doc["generator"];
        if (!g.is_object() || !g.contains("kind"))
            throw ParseError("generator needs an object with a 'kind'");
        const std::string kind = g["kind"].get<std::string>();
        const auto num = [&](const char* key) {
            if (!g.contains(key) || !g[key].is_number())
                throw ParseError(std::string("generator missing numeric '") + key + "'");
            return g[key].get<double>();
        };
        if (kind == "linear") {
            rule = LinearTail{num("slope"), g.contains("offset") ? num("offset") : 0.0};
        } else if (kind == "power") {
            rule = PowerTail{num("exponent"), g.contains("scale") ? num("scale") : 1.0};
        } else {
            throw ParseError("unknown generator kind '" + kind + "'");
        }
    }
    std::string name = doc.contains("name") ? doc["name"].get<std::string>() : std::string{};
    return validate(std::move(levels), rule, std::move(name));
}

Spectrum load_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spectrum file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spectrum_json(buf.str());
}

std::string format_double(double x) {
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        char tmp[32];
        std::snprintf(tmp, sizeof tmp, "%.0f", x);
        return tmp;
    }
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    // trim to the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char tmp[64];
        std::snprintf(tmp, sizeof tmp, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(tmp, "%lf", &back);
        if (back == x) return tmp;
    }
    return std::string(buf, buf + n);
}

std::string distribution_to_csv(const Distribution& d) {
    std::ostringstream os;
    os << "index,probability\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        os << (d.support_offset() + i) << ',' << format_double(d.probs()[i]) << '\n';
    return os.str();
}

std::string distribution_to_json(const Distribution& d, int indent) {
    json arr = json::array();
    for (std::size_t i = 0; i < d.support_offset(); ++i) arr.push_back(0.0);
    for (double p : d.probs()) arr.push_back(p);
    json doc{{"probs", arr}, {"certified_tail", d.certified_tail()}};
    return doc.dump(indent);
}

std::string report_to_json(const VerificationReport& r, int indent) {
    json doc{{"trials", r.trials},   {"violations", r.violations}, {"max_slack", r.max_slack},
             {"min_slack", r.min_slack}, {"seed", r.seed},         {"notes", r.notes}};
    return doc.dump(indent);
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto fail = [&](const char* why) {
        throw ParseError("grid spec '" + spec + "': " + why);
    };
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);

    const auto to_num = [&](const std::string& sv) {
        double v = 0.0;
        const auto* begin = sv.data();
        const auto* end = sv.data() + sv.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) fail("bad number");
        return v;
    };

    std::vector<double> grid;
    if (parts.size() == 1) {
        grid.push_back(to_num(parts[0]));
        return grid;
    }

    bool logspace = false;
    std::size_t at = 0;
    if (parts[0] == "log") {
        logspace = true;
        at = 1;
    }
    if (parts.size() - at != 3) fail("expected start:stop:count");
    const double start = to_num(parts[at]);
    const double stop = to_num(parts[at + 1]);
    const double count_d = to_num(parts[at + 2]);
    const std::size_t count = static_cast<std::size_t>(count_d);
    if (count_d != static_cast<double>(count) || count < 1) fail("count must be a positive integer");
    if (!(start < stop) && count > 1) fail("start must be below stop");
    if (logspace && !(start > 0.0)) fail("log grid needs positive start");

    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        grid.push_back(logspace ? start * std::pow(stop / start, t)
                                : start + (stop - start) * t);
    }
    grid.back() = stop;  // exact endpoint
    return grid;
}

}  // namespace ebnd
