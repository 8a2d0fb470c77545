#include "plurilag/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "plurilag/errors.hpp"

namespace plurilag::io {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

int read_dim(const json& doc, const std::string& path) {
    if (!doc.is_object() || !doc.contains("m") || !doc["m"].is_number_integer())
        throw ParseError(path + ": expected an object with an integer entry \"m\"");
    int m = doc["m"].get<int>();
    if (m < 1) throw ParseError(path + ": \"m\" must be at least 1, got " + std::to_string(m));
    return m;
}

lattice::MultiIndex read_vertex(const json& j, int m, const std::string& where) {
    if (!j.is_array() || j.size() != static_cast<size_t>(m))
        throw ParseError(where + ": expected an array of " + std::to_string(m) +
                         " integer coordinates");
    std::vector<int> c;
    c.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw ParseError(where + ": coordinates must be integers");
        c.push_back(e.get<int>());
    }
    return lattice::MultiIndex(std::move(c));
}

} // namespace

lattice::QuadSurface load_surface(const std::string& path) {
    const json doc = parse_file(path);
    const int m = read_dim(doc, path);
    if (!doc.contains("squares") || !doc["squares"].is_array())
        throw ParseError(path + ": expected an array entry \"squares\"");

    std::vector<lattice::OrientedSquare> squares;
    squares.reserve(doc["squares"].size());
    for (size_t s = 0; s < doc["squares"].size(); ++s) {
        const std::string where = path + ": squares[" + std::to_string(s) + "]";
        const json& sq = doc["squares"][s];
        if (!sq.is_object() || !sq.contains("base") || !sq.contains("dirs"))
            throw ParseError(where + ": expected an object with \"base\" and \"dirs\"");
        lattice::MultiIndex base = read_vertex(sq["base"], m, where + ".base");
        const json& dirs = sq["dirs"];
        if (!dirs.is_array() || dirs.size() != 2 || !dirs[0].is_number_integer() ||
            !dirs[1].is_number_integer())
            throw ParseError(where + ".dirs: expected two integer directions");
        try {
            squares.emplace_back(std::move(base), dirs[0].get<int>(), dirs[1].get<int>());
        } catch (const CellError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return lattice::QuadSurface(m, std::move(squares));
}

std::string surface_to_json(const lattice::QuadSurface& s) {
    json doc;
    doc["m"] = s.dim();
    doc["squares"] = json::array();
    for (const auto& sq : s.squares()) {
        json j;
        j["base"] = sq.base.coords();
        j["dirs"] = {sq.di, sq.dj};
        doc["squares"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

forms::FieldMap load_fields(const std::string& path) {
    const json doc = parse_file(path);
    const int m = read_dim(doc, path);
    if (!doc.contains("values") || !doc["values"].is_array())
        throw ParseError(path + ": expected an array entry \"values\"");

    forms::FieldMap fields(m);
    for (size_t s = 0; s < doc["values"].size(); ++s) {
        const std::string where = path + ": values[" + std::to_string(s) + "]";
        const json& entry = doc["values"][s];
        if (!entry.is_object() || !entry.contains("at") || !entry.contains("value"))
            throw ParseError(where + ": expected an object with \"at\" and \"value\"");
        if (!entry["value"].is_number())
            throw ParseError(where + ".value: expected a number");
        lattice::MultiIndex at = read_vertex(entry["at"], m, where + ".at");
        if (fields.contains(at))
            throw ParseError(where + ": duplicate vertex " + at.str());
        fields.set(at, entry["value"].get<double>());
    }
    return fields;
}

std::string fields_to_json(const forms::FieldMap& f) {
    std::vector<lattice::MultiIndex> order;
    order.reserve(f.size());
    for (const auto& [v, val] : f.items()) order.push_back(v);
    std::sort(order.begin(), order.end());

    json doc;
    doc["m"] = f.dim();
    doc["values"] = json::array();
    for (const auto& v : order) {
        json j;
        j["at"] = v.coords();
        j["value"] = f.at(v);
        doc["values"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << text;
    if (!out) throw ParseError(path + ": write failed");
}

} // namespace plurilag::io
