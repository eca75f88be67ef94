#include "cfk/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "cfk/errors.hpp"

namespace cfk {

namespace {

using ojson = nlohmann::ordered_json;

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string(where) + " is missing \"" + key + "\"");
    return *it;
}

int int_field(const nlohmann::json& obj, const char* key, const char* where) {
    const auto& v = field(obj, key, where);
    if (!v.is_number_integer()) throw ParseError(std::string(where) + " field \"" + key + "\" must be an integer");
    const auto x = v.get<long long>();
    if (x < -1000000000LL || x > 1000000000LL)
        throw ParseError(std::string(where) + " field \"" + key + "\" is out of range");
    return static_cast<int>(x);
}

std::string string_field(const nlohmann::json& obj, const char* key, const char* where) {
    const auto& v = field(obj, key, where);
    if (!v.is_string()) throw ParseError(std::string(where) + " field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> keys, const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
        if (!known) throw ParseError(std::string(where) + " has unknown key \"" + it.key() + "\"");
    }
}

}  // namespace

std::string serialize(const Complex& c) {
    std::vector<int> order(c.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return c.gen(x).id < c.gen(y).id; });

    auto specs = c.arrow_specs();
    std::sort(specs.begin(), specs.end(), [](const ArrowSpec& x, const ArrowSpec& y) {
        return std::tie(x.from, x.to, x.upower) < std::tie(y.from, y.to, y.upower);
    });

    ojson doc;
    doc["name"] = c.name();
    doc["format_version"] = kFormatVersion;
    ojson gens = ojson::array();
    for (int g : order) {
        ojson o;
        o["id"] = c.gen(g).id;
        o["alexander"] = c.gen(g).alexander;
        o["maslov"] = c.gen(g).maslov;
        gens.push_back(std::move(o));
    }
    doc["generators"] = std::move(gens);
    ojson arrows = ojson::array();
    for (const auto& a : specs) {
        ojson o;
        o["from"] = a.from;
        o["to"] = a.to;
        o["upower"] = a.upower;
        arrows.push_back(std::move(o));
    }
    doc["arrows"] = std::move(arrows);
    return doc.dump(2) + "\n";
}

Complex parse(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("complex file must be a JSON object");
    reject_unknown_keys(doc, {"name", "format_version", "generators", "arrows"}, "complex file");

    const int version = int_field(doc, "format_version", "complex file");
    if (version != kFormatVersion)
        throw ParseError("unsupported format_version " + std::to_string(version));
    const std::string name = string_field(doc, "name", "complex file");

    const auto& gens_json = field(doc, "generators", "complex file");
    const auto& arrows_json = field(doc, "arrows", "complex file");
    if (!gens_json.is_array()) throw ParseError("\"generators\" must be an array");
    if (!arrows_json.is_array()) throw ParseError("\"arrows\" must be an array");

    std::vector<Generator> gens;
    gens.reserve(gens_json.size());
    for (const auto& g : gens_json) {
        if (!g.is_object()) throw ParseError("generator entries must be objects");
        reject_unknown_keys(g, {"id", "alexander", "maslov"}, "generator");
        gens.push_back({string_field(g, "id", "generator"), int_field(g, "alexander", "generator"),
                        int_field(g, "maslov", "generator")});
    }
    std::vector<ArrowSpec> arrows;
    arrows.reserve(arrows_json.size());
    for (const auto& a : arrows_json) {
        if (!a.is_object()) throw ParseError("arrow entries must be objects");
        reject_unknown_keys(a, {"from", "to", "upower"}, "arrow");
        arrows.push_back({string_field(a, "from", "arrow"), string_field(a, "to", "arrow"),
                          int_field(a, "upower", "arrow")});
    }
    return Complex::from_specs(name, std::move(gens), arrows);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("read error on '" + path + "'");
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write error on '" + path + "'");
}

Complex load_complex(const std::string& path) { return parse(read_text_file(path)); }

namespace {

struct Copy {
    int gen;
    int i;
};

struct Segment {
    double x0, y0, x1, y1;
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void check_window(const RenderWindow& w) {
    if (w.imax < w.imin || w.jmax < w.jmin) throw PreconditionError("render window has empty bounds");
    const long width = static_cast<long>(w.imax) - w.imin + 1;
    const long height = static_cast<long>(w.jmax) - w.jmin + 1;
    if (width > kMaxRenderSide || height > kMaxRenderSide)
        throw WindowTooLarge("render window " + std::to_string(width) + "x" + std::to_string(height) +
                             " exceeds " + std::to_string(kMaxRenderSide) + "x" +
                             std::to_string(kMaxRenderSide));
}

// One i-offset per generator so that arrows along a spanning forest join the
// chosen copies.
std::vector<int> auto_offsets(const Complex& c) {
    std::vector<int> off(c.size(), 0);
    std::vector<char> seen(c.size(), 0);
    for (std::size_t root = 0; root < c.size(); ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::queue<int> q;
        q.push(static_cast<int>(root));
        while (!q.empty()) {
            const int g = q.front();
            q.pop();
            for (int ai : c.out_arrows(g)) {
                const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
                if (!seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    off[static_cast<std::size_t>(a.to)] = off[static_cast<std::size_t>(g)] - a.upower;
                    q.push(a.to);
                }
            }
            for (int ai : c.in_arrows(g)) {
                const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
                if (!seen[static_cast<std::size_t>(a.from)]) {
                    seen[static_cast<std::size_t>(a.from)] = 1;
                    off[static_cast<std::size_t>(a.from)] = off[static_cast<std::size_t>(g)] + a.upower;
                    q.push(a.from);
                }
            }
        }
    }
    return off;
}

}  // namespace

std::string render_svg(const Complex& c, const std::optional<RenderWindow>& window) {
    std::vector<Copy> copies;
    if (window) {
        check_window(*window);
        for (std::size_t g = 0; g < c.size(); ++g)
            for (int i = window->imin; i <= window->imax; ++i) {
                const int j = c.gen(static_cast<int>(g)).alexander + i;
                if (j >= window->jmin && j <= window->jmax) copies.push_back({static_cast<int>(g), i});
            }
    } else {
        const auto off = auto_offsets(c);
        for (std::size_t g = 0; g < c.size(); ++g) copies.push_back({static_cast<int>(g), off[g]});
    }

    // Lattice point -> copies there, ordered by generator id.
    std::map<std::pair<int, int>, std::vector<std::size_t>> at;
    for (std::size_t k = 0; k < copies.size(); ++k) {
        const auto& cp = copies[k];
        at[{cp.i, c.gen(cp.gen).alexander + cp.i}].push_back(k);
    }
    std::vector<double> shift(copies.size(), 0.0);
    for (auto& [pt, ks] : at) {
        std::sort(ks.begin(), ks.end(),
                  [&](std::size_t x, std::size_t y) { return c.gen(copies[x].gen).id < c.gen(copies[y].gen).id; });
        const double mid = (static_cast<double>(ks.size()) - 1.0) / 2.0;
        for (std::size_t t = 0; t < ks.size(); ++t) shift[ks[t]] = 0.24 * (static_cast<double>(t) - mid);
    }
    auto copy_index = [&](int gen, int i) -> std::optional<std::size_t> {
        auto it = at.find({i, c.gen(gen).alexander + i});
        if (it == at.end()) return std::nullopt;
        for (std::size_t k : it->second)
            if (copies[k].gen == gen && copies[k].i == i) return k;
        return std::nullopt;
    };
    auto position = [&](int gen, int i) {
        const double base_x = i;
        const double base_y = c.gen(gen).alexander + i;
        const auto k = copy_index(gen, i);
        const double s = k ? shift[*k] : 0.0;
        return std::pair<double, double>{base_x + s, base_y + s};
    };

    std::vector<Segment> segments;
    for (const auto& cp : copies) {
        for (int ai : c.out_arrows(cp.gen)) {
            const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
            const int ti = cp.i - a.upower;
            if (window) {
                const int tj = c.gen(a.to).alexander + ti;
                if (ti < window->imin || ti > window->imax || tj < window->jmin || tj > window->jmax) continue;
            }
            const auto [x0, y0] = position(cp.gen, cp.i);
            const auto [x1, y1] = position(a.to, ti);
            segments.push_back({x0, y0, x1, y1});
        }
    }

    RenderWindow box{};
    if (window) {
        box = *window;
    } else {
        bool first = true;
        auto include = [&](int i, int j) {
            if (first) {
                box = {i, i, j, j};
                first = false;
            }
            box.imin = std::min(box.imin, i);
            box.imax = std::max(box.imax, i);
            box.jmin = std::min(box.jmin, j);
            box.jmax = std::max(box.jmax, j);
        };
        for (const auto& cp : copies) {
            include(cp.i, c.gen(cp.gen).alexander + cp.i);
            for (int ai : c.out_arrows(cp.gen)) {
                const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
                include(cp.i - a.upower, c.gen(a.to).alexander + cp.i - a.upower);
            }
        }
        if (first) box = {0, 0, 0, 0};
        box.imin = std::min(box.imin, 0) - 1;
        box.imax = std::max(box.imax, 0) + 1;
        box.jmin = std::min(box.jmin, 0) - 1;
        box.jmax = std::max(box.jmax, 0) + 1;
        check_window(box);
    }

    const double unit = 40.0;
    const double margin = 20.0;
    const double width = (box.imax - box.imin) * unit + 2 * margin;
    const double height = (box.jmax - box.jmin) * unit + 2 * margin;
    auto sx = [&](double i) { return num(margin + (i - box.imin) * unit); };
    auto sy = [&](double j) { return num(margin + (box.jmax - j) * unit); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
       << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    os << "  <title>" << xml_escape(c.name()) << "</title>\n";
    os << "  <defs>\n"
       << "    <marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
          "markerHeight=\"6\" orient=\"auto\">\n"
       << "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/>\n"
       << "    </marker>\n"
       << "  </defs>\n";
    os << "  <g id=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int i = box.imin; i <= box.imax; ++i)
        os << "    <line x1=\"" << sx(i) << "\" y1=\"" << sy(box.jmin) << "\" x2=\"" << sx(i) << "\" y2=\""
           << sy(box.jmax) << "\"/>\n";
    for (int j = box.jmin; j <= box.jmax; ++j)
        os << "    <line x1=\"" << sx(box.imin) << "\" y1=\"" << sy(j) << "\" x2=\"" << sx(box.imax) << "\" y2=\""
           << sy(j) << "\"/>\n";
    os << "  </g>\n";
    os << "  <g id=\"axes\" stroke=\"#888888\" stroke-width=\"1.5\">\n";
    if (box.jmin <= 0 && 0 <= box.jmax)
        os << "    <line x1=\"" << sx(box.imin) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(box.imax) << "\" y2=\""
           << sy(0) << "\"/>\n";
    if (box.imin <= 0 && 0 <= box.imax)
        os << "    <line x1=\"" << sx(0) << "\" y1=\"" << sy(box.jmin) << "\" x2=\"" << sx(0) << "\" y2=\""
           << sy(box.jmax) << "\"/>\n";
    os << "  </g>\n";
    os << "  <g id=\"arrows\" stroke=\"black\" stroke-width=\"1.5\" marker-end=\"url(#head)\">\n";
    for (const auto& s : segments)
        os << "    <line x1=\"" << sx(s.x0) << "\" y1=\"" << sy(s.y0) << "\" x2=\"" << sx(s.x1) << "\" y2=\""
           << sy(s.y1) << "\"/>\n";
    os << "  </g>\n";
    os << "  <g id=\"generators\" fill=\"black\">\n";
    for (const auto& [pt, ks] : at) {
        for (std::size_t k : ks) {
            const auto& cp = copies[k];
            const auto [x, y] = position(cp.gen, cp.i);
            os << "    <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"4\"><title>" << c.gen(cp.gen).id
               << " (" << pt.first << "," << pt.second << ")</title></circle>\n";
        }
    }
    os << "  </g>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace cfk
