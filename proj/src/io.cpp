#include "cluster/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cluster/error.hpp"

namespace cluster::io {

namespace {

using json = nlohmann::json;

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        std::string what = e.what();
        auto colon = what.find("syntax error");
        throw ParseError("line " + std::to_string(line) + ": " + (colon == std::string::npos ? what : what.substr(colon)));
    }
}

void expect_object(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
}

const json& field(const json& j, const std::string& name) {
    if (!j.contains(name)) throw ParseError("missing field '" + name + "'");
    return j.at(name);
}

std::vector<std::string> string_list(const json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError("field '" + name + "': expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw ParseError("field '" + name + "'[" + std::to_string(i) + "]: expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

long long integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<long long>();
}

std::vector<int> int_list(const json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError("field '" + name + "': expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(static_cast<int>(integer(j[i], "field '" + name + "'[" + std::to_string(i) + "]")));
    return out;
}

IntMatrix int_matrix(const json& j, const std::string& name, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError("field '" + name + "': expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError("field '" + name + "' row " + std::to_string(i) + ": expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = integer(j[i][c], "field '" + name + "'[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& id, const std::string& where) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == id) return i;
    throw ParseError(where + ": unknown vertex '" + id + "'");
}

void check_unique(const std::vector<std::string>& names, const std::string& where) {
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second) throw ParseError(where + ": duplicate entry '" + n + "'");
}

// ---- canonical writers ----

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string string_array(const std::vector<std::string>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + json_string(v[i]);
    return out + "]";
}

std::string int_array(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
    return out + "]";
}

std::string matrix_rows(const IntMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + std::to_string(m(i, j));
        out += "]";
    }
    return out + "]";
}

std::string rational_text(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return json_string(q.get_str());
}

std::string seed_fields(const SeedFile& f, const std::string& sep) {
    std::string out = "\"vertices\": " + string_array(f.vertices) + "," + sep;
    out += "\"frozen\": " + string_array(f.frozen) + "," + sep;
    out += "\"d\": " + int_array(f.d) + "," + sep;
    out += "\"b\": " + matrix_rows(f.b);
    if (f.lambda) out += "," + sep + "\"lambda\": " + matrix_rows(*f.lambda);
    return out;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<int> parse_int_list(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw ParseError("unbalanced brackets in '" + s + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoi(item, &used));
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("expected an integer, got '" + item + "'");
    }
    return out;
}

SeedFile parse_seed_file(std::string_view text) {
    json j = parse_json(text);
    expect_object(j, "seed", {"vertices", "frozen", "d", "b", "lambda"});
    SeedFile f;
    f.vertices = string_list(field(j, "vertices"), "vertices");
    check_unique(f.vertices, "field 'vertices'");
    const std::size_t n = f.vertices.size();
    if (j.contains("frozen")) f.frozen = string_list(j.at("frozen"), "frozen");
    check_unique(f.frozen, "field 'frozen'");
    for (const auto& v : f.frozen) index_of(f.vertices, v, "field 'frozen'");
    if (j.contains("d")) {
        f.d = int_list(j.at("d"), "d");
        if (f.d.size() != n) throw ParseError("field 'd': expected " + std::to_string(n) + " entries");
        for (int x : f.d)
            if (x <= 0) throw ParseError("field 'd': entries must be positive");
    } else {
        f.d.assign(n, 1);
    }
    f.b = int_matrix(field(j, "b"), "b", n, n);
    if (j.contains("lambda") && !j.at("lambda").is_null()) f.lambda = int_matrix(j.at("lambda"), "lambda", n, n);
    return f;
}

std::string write_seed_file(const SeedFile& f) { return "{\n  " + seed_fields(f, "\n  ") + "\n}\n"; }

Seed seed_from_file(const SeedFile& f, bool quantum) {
    const std::size_t n = f.vertices.size();
    if (n == 0) throw ParseError("field 'vertices': a seed needs at least one vertex");
    std::vector<bool> unfrozen(n, true);
    for (const auto& v : f.frozen) unfrozen[index_of(f.vertices, v, "field 'frozen'")] = false;
    check_skew_symmetrizable(f.b, f.d, f.vertices);
    if (f.lambda) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((*f.lambda)(i, j) != -(*f.lambda)(j, i))
                    throw ParseError("field 'lambda': not skew-symmetric at (" + f.vertices[i] + "," + f.vertices[j] + ")");
    }
    check_full_rank(f.b, unfrozen);
    std::optional<IntMatrix> lambda;
    if (quantum) {
        lambda = f.lambda ? *f.lambda : find_compatible_lambda(f.b, unfrozen);
        check_compatibility(*lambda, f.b, unfrozen, f.vertices);
    }
    FramePtr frame;
    try {
        frame = make_frame(f.vertices, unfrozen, f.d, lambda);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return make_initial_seed(frame, f.b);
}

SeedFile file_from_seed(const Seed& s) {
    SeedFile f;
    f.vertices = s.frame->vertices;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!s.is_unfrozen(i)) f.frozen.push_back(s.frame->vertices[i]);
    f.d = s.frame->d;
    f.b = s.b;
    f.lambda = s.lambda_local;
    return f;
}

Triangulation parse_triangulation(std::string_view text) {
    json j = parse_json(text);
    expect_object(j, "triangulation", {"arcs", "frozen_arcs", "triangles"});
    Triangulation t;
    t.arcs = string_list(field(j, "arcs"), "arcs");
    if (j.contains("frozen_arcs")) t.frozen_arcs = string_list(j.at("frozen_arcs"), "frozen_arcs");
    const json& tri = field(j, "triangles");
    if (!tri.is_array()) throw ParseError("field 'triangles': expected an array");
    for (std::size_t i = 0; i < tri.size(); ++i) {
        auto sides = string_list(tri[i], "triangles[" + std::to_string(i) + "]");
        if (sides.size() != 3) throw ParseError("field 'triangles'[" + std::to_string(i) + "]: a triangle has 3 sides");
        t.triangles.push_back({sides[0], sides[1], sides[2]});
    }
    triangulation_to_b(t);  // validates arc names
    return t;
}

std::string write_triangulation(const Triangulation& t) {
    std::string out = "{\n  \"arcs\": " + string_array(t.arcs) + ",\n  \"frozen_arcs\": " + string_array(t.frozen_arcs) +
                      ",\n  \"triangles\": [";
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        const auto& tr = t.triangles[i];
        out += (i ? ", " : "") + string_array({tr[0], tr[1], tr[2]});
    }
    return out + "]\n}\n";
}

QuiverRep parse_rep(std::string_view text) {
    json j = parse_json(text);
    expect_object(j, "representation", {"quiver", "dims", "maps"});
    const json& qj = field(j, "quiver");
    expect_object(qj, "field 'quiver'", {"vertices", "arrows"});
    QuiverRep r;
    r.quiver.vertices = string_list(field(qj, "vertices"), "quiver.vertices");
    check_unique(r.quiver.vertices, "field 'quiver.vertices'");
    const json& arrows = field(qj, "arrows");
    if (!arrows.is_array()) throw ParseError("field 'quiver.arrows': expected an array");
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        auto ends = string_list(arrows[a], "quiver.arrows[" + std::to_string(a) + "]");
        if (ends.size() != 2) throw ParseError("field 'quiver.arrows'[" + std::to_string(a) + "]: expected [source, target]");
        r.quiver.arrows.emplace_back(index_of(r.quiver.vertices, ends[0], "field 'quiver.arrows'"),
                                     index_of(r.quiver.vertices, ends[1], "field 'quiver.arrows'"));
    }
    r.dims = int_list(field(j, "dims"), "dims");
    if (r.dims.size() != r.quiver.size()) throw ParseError("field 'dims': expected " + std::to_string(r.quiver.size()) + " entries");
    for (int d : r.dims)
        if (d < 0) throw ParseError("field 'dims': entries must be nonnegative");
    const json& maps = field(j, "maps");
    if (!maps.is_array() || maps.size() != r.quiver.arrows.size())
        throw ParseError("field 'maps': expected one matrix per arrow");
    for (std::size_t a = 0; a < maps.size(); ++a) {
        auto [s, t] = r.quiver.arrows[a];
        const std::size_t rows = static_cast<std::size_t>(r.dims[t]), cols = static_cast<std::size_t>(r.dims[s]);
        const std::string where = "field 'maps'[" + std::to_string(a) + "]";
        if (!maps[a].is_array() || maps[a].size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
        QMatrix m(rows, cols, Rational(0));
        for (std::size_t i = 0; i < rows; ++i) {
            if (!maps[a][i].is_array() || maps[a][i].size() != cols)
                throw ParseError(where + " row " + std::to_string(i) + ": expected " + std::to_string(cols) + " entries");
            for (std::size_t c = 0; c < cols; ++c) {
                const json& e = maps[a][i][c];
                if (e.is_number_integer()) {
                    m(i, c) = Rational(static_cast<long>(e.get<long long>()));
                } else if (e.is_string()) {
                    try {
                        Rational q(e.get<std::string>());
                        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
                        q.canonicalize();
                        m(i, c) = q;
                    } catch (const std::invalid_argument&) {
                        throw ParseError(where + ": bad rational '" + e.get<std::string>() + "'");
                    }
                } else {
                    throw ParseError(where + ": entries must be integers or \"p/q\" strings");
                }
            }
        }
        r.maps.push_back(std::move(m));
    }
    validate(r);
    return r;
}

std::string write_rep(const QuiverRep& r) {
    std::string out = "{\n  \"quiver\": {\"vertices\": " + string_array(r.quiver.vertices) + ", \"arrows\": [";
    for (std::size_t a = 0; a < r.quiver.arrows.size(); ++a)
        out += (a ? ", " : "") + string_array({r.quiver.vertices[r.quiver.arrows[a].first], r.quiver.vertices[r.quiver.arrows[a].second]});
    out += "]},\n  \"dims\": " + int_array(r.dims) + ",\n  \"maps\": [";
    for (std::size_t a = 0; a < r.maps.size(); ++a) {
        out += a ? ", [" : "[";
        for (std::size_t i = 0; i < r.maps[a].rows(); ++i) {
            out += i ? ", [" : "[";
            for (std::size_t c = 0; c < r.maps[a].cols(); ++c) out += (c ? ", " : "") + rational_text(r.maps[a](i, c));
            out += "]";
        }
        out += "]";
    }
    return out + "]\n}\n";
}

std::string write_catalog(const SeedCatalog& c) {
    std::string out = "{\n  \"seeds\": [";
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
        const Seed& s = c.seeds[i].seed;
        std::vector<std::string> history;
        for (int k : s.history) history.push_back(s.frame->vertices[static_cast<std::size_t>(k)]);
        out += i ? ",\n    " : "\n    ";
        out += "{\"depth\": " + std::to_string(c.seeds[i].depth) + ", \"history\": " + string_array(history) + ", " +
               seed_fields(file_from_seed(s), " ") + "}";
    }
    out += c.seeds.empty() ? "],\n" : "\n  ],\n";
    std::vector<std::string> vars;
    for (const auto& v : c.variables) vars.push_back(render(v));
    out += "  \"variables\": [";
    for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? ",\n    " : "\n    ") + json_string(vars[i]);
    out += vars.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::vector<TorusElement> parse_family(std::string_view text, const FramePtr& frame) {
    json j = parse_json(text);
    expect_object(j, "family", {"elements"});
    auto items = string_list(field(j, "elements"), "elements");
    std::vector<TorusElement> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        try {
            out.push_back(parse_element(items[i], frame));
        } catch (const ParseError& e) {
            throw ParseError("field 'elements'[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

std::string write_family(const std::vector<TorusElement>& family) {
    std::string out = "{\n  \"elements\": [";
    for (std::size_t i = 0; i < family.size(); ++i) out += (i ? ",\n    " : "\n    ") + json_string(render(family[i]));
    out += family.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace cluster::io
