#include "hodgeft/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hodgeft {

using nlohmann::json;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

Rat rat_field(const json& j, const std::string& what) {
    if (j.is_number_integer())
        return Rat(j.get<long>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(what + ": " + e.what());
        }
    }
    throw InputError(what + ": expected integer or \"p/q\" string");
}

Mat mat_field(const json& j, int s, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != s)
        throw InputError(what + ": expected " + std::to_string(s) + " rows");
    Mat m(s, Vec(s, Rat(0)));
    for (int r = 0; r < s; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != s)
            throw InputError(what + ": row " + std::to_string(r + 1) + " has wrong length");
        for (int c = 0; c < s; ++c)
            m[r][c] = rat_field(j[r][c], what);
    }
    return m;
}

} // namespace

HodgeAlgebra parse_algebra(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
    HodgeAlgebra a;
    a.name = j.value("name", origin);
    if (!j.contains("basis") || !j["basis"].is_array())
        throw InputError(origin + ": missing basis array");
    for (const auto& n : j["basis"])
        a.basis.names.push_back(n.get<std::string>());
    int s = a.basis.size();
    if (!j.contains("parity") || static_cast<int>(j["parity"].size()) != s)
        throw InputError(origin + ": parity list must match basis length");
    for (const auto& p : j["parity"]) {
        int v = p.get<int>();
        if (v != 0 && v != 1)
            throw InputError(origin + ": parity entries must be 0 or 1");
        a.basis.parity.push_back(v);
    }
    a.h0_dim = j.value("h0_dim", s);

    a.prod.assign(s, std::vector<std::vector<std::pair<int, Rat>>>(s));
    std::vector<std::vector<bool>> given(s, std::vector<bool>(s, false));
    if (j.contains("mult")) {
        for (const auto& ent : j["mult"]) {
            if (!ent.is_array() || ent.size() != 4)
                throw InputError(origin + ": mult entries are [i, j, k, coeff]");
            int i = ent[0].get<int>(), jj = ent[1].get<int>(), k = ent[2].get<int>();
            if (i < 1 || i > s || jj < 1 || jj > s || k < 1 || k > s)
                throw InputError(origin + ": mult index out of range");
            Rat c = rat_field(ent[3], origin + ": mult coeff");
            a.prod[i - 1][jj - 1].push_back({k - 1, c});
            given[i - 1][jj - 1] = true;
        }
    }
    // default unit products, then graded-symmetric mirrors
    for (int c = 0; c < s; ++c) {
        if (!given[0][c]) {
            a.prod[0][c].push_back({c, Rat(1)});
            given[0][c] = true;
        }
    }
    for (int i = 0; i < s; ++i)
        for (int jj = 0; jj < s; ++jj) {
            if (given[i][jj] || !given[jj][i])
                continue;
            int sign = (a.basis.parity[i] && a.basis.parity[jj]) ? -1 : 1;
            for (const auto& [k, c] : a.prod[jj][i])
                a.prod[i][jj].push_back({k, sign < 0 ? -c : c});
            given[i][jj] = true;
        }

    if (!j.contains("integral") || static_cast<int>(j["integral"].size()) != s)
        throw InputError(origin + ": integral covector must match basis length");
    for (const auto& v : j["integral"])
        a.integral.push_back(rat_field(v, origin + ": integral"));

    auto op = [&](const char* key) {
        if (!j.contains(key))
            return mat_zero(s);
        return mat_field(j[key], s, origin + ": " + key);
    };
    a.Q = op("Q");
    a.Gm = op("Gm");
    a.Gp = op("Gp");
    a.finalize();
    return a;
}

HodgeAlgebra load_algebra(const std::string& path) {
    return parse_algebra(slurp_file(path), path);
}

RMatrixSeries parse_rmatrix(const std::string& text, const std::string& origin, int dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
    if (!j.contains("terms") || !j["terms"].is_array())
        throw InputError(origin + ": missing terms array");
    RMatrixSeries r;
    for (const auto& t : j["terms"]) {
        int l = t.value("l", 0);
        if (l < 1)
            throw InputError(origin + ": term with l < 1");
        if (!t.contains("matrix"))
            throw InputError(origin + ": term without matrix");
        r.terms.push_back({l, mat_field(t["matrix"], dim, origin + ": r_" + std::to_string(l))});
    }
    return r;
}

RMatrixSeries load_rmatrix(const std::string& path, int dim) {
    return parse_rmatrix(slurp_file(path), path, dim);
}

} // namespace hodgeft
