#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "snarklab/graph.hpp"

namespace snarklab {

enum class Format { graph6, jsonmg };

inline Format parse_format(const std::string& s) {
    if (s == "graph6" || s == "g6") return Format::graph6;
    if (s == "jsonmg" || s == "json") return Format::jsonmg;
    throw Error(ErrorKind::MalformedEncoding, "unknown format '" + s + "'");
}

inline std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline CubicGraph parse_graph6(std::string_view text) {
    std::string s = trim(text);
    if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
    if (s.empty()) throw Error(ErrorKind::MalformedEncoding, "empty graph6 string");
    for (char c : s)
        if (c < 63 || c > 126) throw Error(ErrorKind::MalformedEncoding, "byte outside graph6 range");
    size_t pos = 0;
    long n = 0;
    if (s[0] != 126) {
        n = s[0] - 63;
        pos = 1;
    } else if (s.size() >= 4 && s[1] != 126) {
        n = (long(s[1] - 63) << 12) | (long(s[2] - 63) << 6) | long(s[3] - 63);
        pos = 4;
    } else {
        throw Error(ErrorKind::MalformedEncoding, "graph6 order too large");
    }
    const long bits = n * (n - 1) / 2;
    const size_t need = static_cast<size_t>((bits + 5) / 6);
    if (s.size() - pos != need) throw Error(ErrorKind::MalformedEncoding, "graph6 length mismatch");
    vector<array<int, 2>> edges;
    long k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int byte = s[pos + k / 6] - 63;
            if ((byte >> (5 - k % 6)) & 1) edges.push_back({i, j});
        }
    return CubicGraph(static_cast<int>(n), std::move(edges));
}

inline std::string to_graph6(const CubicGraph& g) {
    const int n = g.order();
    for (int e = 0; e < g.size(); ++e)
        if (g.is_loop(e) || g.multiplicity(g.ends(e)[0], g.ends(e)[1]) > 1)
            throw Error(ErrorKind::MalformedEncoding, "graph6 requires a simple graph");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    vector<char> adj(static_cast<size_t>(n) * n, 0);
    for (auto [a, b] : g.edges()) adj[a * n + b] = adj[b * n + a] = 1;
    int acc = 0, cnt = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | adj[i * n + j];
            if (++cnt == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = cnt = 0;
            }
        }
    if (cnt) out.push_back(static_cast<char>((acc << (6 - cnt)) + 63));
    return out;
}

inline nlohmann::json to_jsonmg(const CubicGraph& g) {
    nlohmann::json j;
    j["n"] = g.order();
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges()) j["edges"].push_back({a, b});
    return j;
}

inline CubicGraph from_jsonmg(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges") || !j["n"].is_number_integer() || !j["edges"].is_array())
        throw Error(ErrorKind::MalformedEncoding, "jsonmg needs integer 'n' and array 'edges'");
    vector<array<int, 2>> edges;
    for (auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw Error(ErrorKind::MalformedEncoding, "jsonmg edge must be a pair of integers");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return CubicGraph(j["n"].get<int>(), std::move(edges));
}

inline CubicGraph parse_jsonmg(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::MalformedEncoding, ex.what());
    }
    return from_jsonmg(j);
}

inline CubicGraph parse_graph(std::string_view text, Format f) {
    return f == Format::graph6 ? parse_graph6(text) : parse_jsonmg(text);
}

inline std::string serialize(const CubicGraph& g, Format f) {
    return f == Format::graph6 ? to_graph6(g) : to_jsonmg(g).dump();
}

// One record per non-blank line for graph6; jsonmg files hold one object per line or a top-level array.
struct Record {
    int line = 0;
    std::string text;
};

inline vector<Record> split_records(const std::string& content, Format f) {
    vector<Record> out;
    if (f == Format::jsonmg) {
        std::string t = trim(content);
        if (!t.empty() && t[0] == '[') {
            nlohmann::json arr;
            try {
                arr = nlohmann::json::parse(t);
            } catch (const nlohmann::json::exception& ex) {
                throw Error(ErrorKind::MalformedEncoding, ex.what());
            }
            int i = 0;
            for (auto& j : arr) out.push_back({++i, j.dump()});
            return out;
        }
    }
    std::istringstream in(content);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back({no, t});
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IOError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IOError, "cannot write " + path);
    out << data;
}

}  // namespace snarklab
