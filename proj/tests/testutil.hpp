#pragma once

#include <string>

#include "hodgeft/algebra.hpp"
#include "hodgeft/io.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(HODGEFT_DATA_DIR) + "/" + name;
}

inline hodgeft::HodgeAlgebra load_fixture(const std::string& name) {
    return hodgeft::load_algebra(data_path(name));
}

/// The 10-dim two-block fixture, built in code (the JSON file must agree).
inline hodgeft::HodgeAlgebra make_two_block() {
    using namespace hodgeft;
    HodgeAlgebra a;
    a.name = "two-block";
    a.basis.names = {"1", "w", "p", "q", "r", "s", "P", "T", "U", "V"};
    a.basis.parity = {0, 0, 0, 1, 1, 0, 0, 1, 1, 0};
    a.h0_dim = 2;
    int s = 10;
    a.prod.assign(s, std::vector<std::vector<std::pair<int, Rat>>>(s));
    for (int c = 0; c < s; ++c)
        a.prod[0][c].push_back({c, Rat(1)});
    for (int c = 1; c < s; ++c)
        a.prod[c][0].push_back({c, Rat(1)});
    auto pairing = [&](int i, int j, long v) {
        a.prod[i][j].push_back({1, Rat(v)}); // lands on w
        int sign = (a.basis.parity[i] && a.basis.parity[j]) ? -1 : 1;
        a.prod[j][i].push_back({1, Rat(sign * v)});
    };
    // eta on H4: (p,V) = 1, (s,P) = -1, (q,U) = -1, (r,T) = -1
    pairing(2, 9, 1);
    pairing(5, 6, -1);
    pairing(3, 8, -1);
    pairing(4, 7, -1);
    a.integral.assign(s, Rat(0));
    a.integral[1] = Rat(1);
    a.Q = mat_zero(s);
    a.Gm = mat_zero(s);
    a.Gp = mat_zero(s);
    // block A: p -> q -> 0, p -> r -> 0, s = Q G- p
    a.Q[3][2] = Rat(1);
    a.Q[5][4] = Rat(1);
    a.Gm[4][2] = Rat(1);
    a.Gm[5][3] = Rat(-1);
    a.Gp[2][3] = Rat(1);
    a.Gp[4][5] = Rat(1);
    // block B
    a.Q[7][6] = Rat(1);
    a.Q[9][8] = Rat(1);
    a.Gm[8][6] = Rat(1);
    a.Gm[9][7] = Rat(-1);
    a.Gp[6][7] = Rat(1);
    a.Gp[8][9] = Rat(1);
    a.finalize();
    return a;
}

inline hodgeft::HodgeAlgebra make_trivial() {
    using namespace hodgeft;
    HodgeAlgebra a;
    a.name = "point";
    a.basis.names = {"e1"};
    a.basis.parity = {0};
    a.h0_dim = 1;
    a.prod.assign(1, std::vector<std::vector<std::pair<int, Rat>>>(1));
    a.prod[0][0].push_back({0, Rat(1)});
    a.integral = {Rat(1)};
    a.Q = mat_zero(1);
    a.Gm = mat_zero(1);
    a.Gp = mat_zero(1);
    a.finalize();
    return a;
}

} // namespace testutil
