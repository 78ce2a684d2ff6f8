#pragma once

// Golden per-k data for all 92 non-square k in [2,102]: rank r, class count
// rho, the fundamental (xf, yf) of x^2 - k*y^2 = 1, and the complete set of
// generalized fundamental solutions of X^2 - k*Y^2 = 1-k (odd-parity heads
// first, then the classes that generate no triangular solutions).
// Format per line: k r rho xf yf | X:Y ... | X:Y ...

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "pelltri/pellcore.hpp"

namespace golden {

struct Row {
    long k = 0;
    int r = 0;
    std::size_t rho = 0;
    pelltri::Int xf, yf;
    std::vector<pelltri::GenPair> odd_heads;    // generate triangular solutions
    std::vector<pelltri::GenPair> even_heads;   // parity-discarded classes
    std::vector<pelltri::GenPair> all_heads() const {
        std::vector<pelltri::GenPair> out = odd_heads;
        out.insert(out.end(), even_heads.begin(), even_heads.end());
        return out;
    }
};

inline const char* kTableText = R"(
2 1 1 3 2 | 1:1 |
3 1 1 2 1 | 1:1 |
5 2 3 9 4 | 1:1 -1:1 | 4:2
6 2 2 5 2 | 1:1 -1:1 |
7 2 2 8 3 | 1:1 -1:1 |
8 2 2 3 1 | 1:1 -1:1 |
10 3 3 19 6 | 1:1 -1:1 9:3 |
11 2 2 10 3 | 1:1 -1:1 |
12 2 2 7 2 | 1:1 -1:1 |
13 4 6 649 180 | 1:1 -1:1 25:7 -25:7 | 14:4 -14:4
14 2 2 15 4 | 1:1 -1:1 |
15 2 2 4 1 | 1:1 -1:1 |
17 2 3 33 8 | 1:1 -1:1 | 16:4
18 2 2 17 4 | 1:1 -1:1 |
19 3 3 170 39 | 1:1 -1:1 39:9 |
20 2 2 9 2 | 1:1 -1:1 |
21 4 6 55 12 | 1:1 -1:1 13:3 -13:3 | 8:2 -8:2
22 4 4 197 42 | 1:1 -1:1 23:5 -23:5 |
23 2 2 24 5 | 1:1 -1:1 |
24 2 2 5 1 | 1:1 -1:1 |
26 3 3 51 10 | 1:1 -1:1 25:5 |
27 2 2 26 5 | 1:1 -1:1 |
28 4 4 127 24 | 1:1 -1:1 15:3 -15:3 |
29 4 6 9801 1820 | 1:1 -1:1 59:11 -59:11 | 86:16 -86:16
30 2 2 11 2 | 1:1 -1:1 |
31 4 4 1520 273 | 1:1 -1:1 61:11 -61:11 |
32 2 2 17 3 | 1:1 -1:1 |
33 2 4 23 4 | 1:1 -1:1 | 10:2 -10:2
34 2 2 35 6 | 1:1 -1:1 |
35 2 2 6 1 | 1:1 -1:1 |
37 2 3 73 12 | 1:1 -1:1 | 36:6
38 2 2 37 6 | 1:1 -1:1 |
39 2 2 25 4 | 1:1 -1:1 |
40 4 4 19 3 | 1:1 -1:1 11:2 -11:2 |
41 4 4 2049 320 | 1:1 -1:1 83:13 -83:13 |
42 2 2 13 2 | 1:1 -1:1 |
43 4 4 3482 531 | 1:1 -1:1 85:13 -85:13 |
44 2 2 199 30 | 1:1 -1:1 |
45 4 6 161 24 | 1:1 -1:1 19:3 -19:3 | 26:4 -26:4
46 6 6 24335 3588 | 1:1 -1:1 47:7 -47:7 183:27 -183:27 |
47 2 2 48 7 | 1:1 -1:1 |
48 2 2 7 1 | 1:1 -1:1 |
50 3 3 99 14 | 1:1 -1:1 49:7 |
51 3 3 50 7 | 1:1 -1:1 35:5 |
52 4 4 649 90 | 1:1 -1:1 79:11 -79:11 |
53 4 6 66249 9100 | 1:1 -1:1 211:29 -211:29 | 160:22 -160:22
54 2 2 485 66 | 1:1 -1:1 |
55 4 4 89 12 | 1:1 -1:1 21:3 -21:3 |
56 2 4 15 2 | 1:1 -1:1 | 13:2 -13:2
57 4 4 151 20 | 1:1 -1:1 37:5 -37:5 |
58 4 4 19603 2574 | 1:1 -1:1 175:23 -175:23 |
59 2 2 530 69 | 1:1 -1:1 |
60 2 2 31 4 | 1:1 -1:1 |
61 8 12 1766319049 226153980 | 1:1 -1:1 367:47 -367:47 6709:859 -6709:859 94793:12137 -94793:12137 | 62:8 -62:8 5186:664 -5186:664
62 2 2 63 8 | 1:1 -1:1 |
63 2 2 8 1 | 1:1 -1:1 |
65 2 5 129 16 | 1:1 -1:1 | 14:2 -14:2 64:8
66 4 4 65 8 | 1:1 -1:1 23:3 -23:3 |
67 4 4 48842 5967 | 1:1 -1:1 401:49 -401:49 |
68 2 2 33 4 | 1:1 -1:1 |
69 4 6 7775 936 | 1:1 -1:1 91:11 -91:11 | 116:14 -116:14
70 4 4 251 30 | 1:1 -1:1 41:5 -41:5 |
71 4 4 3480 413 | 1:1 -1:1 143:17 -143:17 |
72 2 2 17 2 | 1:1 -1:1 |
73 6 6 2281249 267000 | 1:1 -1:1 145:17 -145:17 1461:171 -1461:171 |
74 2 2 3699 430 | 1:1 -1:1 |
75 2 2 26 3 | 1:1 -1:1 |
76 6 6 57799 6630 | 1:1 -1:1 113:13 -113:13 305:35 -305:35 |
77 4 6 351 40 | 1:1 -1:1 43:5 -43:5 | 34:4 -34:4
78 4 4 53 6 | 1:1 -1:1 25:3 -25:3 |
79 2 2 80 9 | 1:1 -1:1 |
80 2 2 9 1 | 1:1 -1:1 |
82 3 3 163 18 | 1:1 -1:1 81:9 |
83 2 2 82 9 | 1:1 -1:1 |
84 2 2 55 6 | 1:1 -1:1 |
85 8 12 285769 30996 | 1:1 -1:1 101:11 -101:11 341:37 -341:37 1429:155 -1429:155 | 16:2 -16:2 424:46 -424:46
86 4 4 10405 1122 | 1:1 -1:1 343:37 -343:37 |
87 2 2 28 3 | 1:1 -1:1 |
88 4 4 197 21 | 1:1 -1:1 65:7 -65:7 |
89 4 4 500001 53000 | 1:1 -1:1 179:19 -179:19 |
90 2 2 19 2 | 1:1 -1:1 |
91 6 6 1574 165 | 1:1 -1:1 27:3 -27:3 181:19 -181:19 |
92 4 4 1151 120 | 1:1 -1:1 47:5 -47:5 |
93 4 6 12151 1260 | 1:1 -1:1 125:13 -125:13 | 154:16 -154:16
94 4 4 2143295 221064 | 1:1 -1:1 281:29 -281:29 |
95 2 2 39 4 | 1:1 -1:1 |
96 4 4 49 5 | 1:1 -1:1 17:2 -17:2 |
97 4 8 62809633 6377352 | 1:1 -1:1 581:59 -581:59 | 98:10 -98:10 12902:1310 -12902:1310
98 2 2 99 10 | 1:1 -1:1 |
99 2 2 10 1 | 1:1 -1:1 |
101 2 3 201 20 | 1:1 -1:1 | 100:10
102 2 2 101 10 | 1:1 -1:1 |
)";

inline std::vector<pelltri::GenPair> parse_pairs(std::istringstream& in,
                                                 const std::string& stop) {
    std::vector<pelltri::GenPair> out;
    std::string tok;
    while (in >> tok) {
        if (tok == stop) break;
        auto colon = tok.find(':');
        out.push_back({pelltri::Int(tok.substr(0, colon)), pelltri::Int(tok.substr(colon + 1))});
    }
    return out;
}

inline const std::vector<Row>& rows() {
    static const std::vector<Row> data = [] {
        std::vector<Row> rows;
        std::istringstream text(kTableText);
        std::string line;
        while (std::getline(text, line)) {
            if (line.empty()) continue;
            std::istringstream in(line);
            Row row;
            std::string xf, yf, bar;
            in >> row.k >> row.r >> row.rho >> xf >> yf >> bar;  // bar == "|"
            row.xf = pelltri::Int(xf);
            row.yf = pelltri::Int(yf);
            row.odd_heads = parse_pairs(in, "|");
            row.even_heads = parse_pairs(in, "|");
            rows.push_back(std::move(row));
        }
        return rows;
    }();
    return data;
}

}  // namespace golden
