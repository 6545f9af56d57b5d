#pragma once

#include <array>
#include <string_view>

namespace mpl {

struct PrintedProduct {
  std::string_view word;
  std::array<std::array<int, 7>, 7> entries;
};

// Products A(w) as printed in the reference tables, used as golden data.
inline constexpr std::array<PrintedProduct, 34> printed_products{{
    {"000100", {{{1,0,0,0,0,0,1}, {1,0,0,0,0,0,1}, {2,0,0,0,0,0,2}, {0,0,0,0,0,0,0}, {2,1,0,0,0,0,1}, {2,0,0,0,0,0,2}, {2,0,0,0,0,0,1}}}},
    {"000101", {{{1,0,1,0,0,0,0}, {1,0,1,0,0,0,0}, {1,0,2,0,0,0,0}, {0,0,0,0,0,0,0}, {1,0,2,1,0,0,0}, {1,0,2,0,0,0,0}, {1,0,2,1,0,0,0}}}},
    {"000102", {{{0,0,0,1,2,0,0}, {0,0,0,1,2,0,0}, {0,0,0,1,3,0,0}, {0,0,0,0,0,0,0}, {1,0,0,1,3,0,1}, {0,0,0,1,3,0,0}, {1,0,0,1,3,0,1}}}},
    {"000110", {{{2,0,0,0,0,0,1}, {2,0,0,0,0,0,1}, {2,0,0,0,0,0,1}, {0,0,0,0,0,0,0}, {3,0,0,1,1,0,1}, {2,0,0,0,0,0,1}, {1,0,0,1,1,0,1}}}},
    {"000111", {{{1,0,2,1,0,0,0}, {1,0,2,1,0,0,0}, {1,0,2,1,0,0,0}, {0,0,0,0,0,0,0}, {1,0,3,3,1,0,0}, {1,0,2,1,0,0,0}, {2,0,1,1,1,0,0}}}},
    {"000112", {{{1,0,0,1,3,0,1}, {1,0,0,1,3,0,1}, {1,0,0,1,3,0,1}, {0,0,0,0,0,0,0}, {3,0,0,1,4,0,3}, {1,0,0,1,3,0,1}, {1,0,0,2,3,0,1}}}},
    {"00012", {{{1,0,0,1,1,0,1}, {1,0,0,1,1,0,1}, {1,0,0,1,1,0,1}, {0,0,0,0,0,0,0}, {1,0,0,2,3,0,1}, {1,0,0,1,1,0,1}, {2,0,0,0,1,0,2}}}},
    {"1001", {{{0,0,1,1,0,0,0}, {0,0,1,1,0,0,0}, {0,0,1,1,0,1,0}, {0,0,1,1,0,0,0}, {0,0,1,1,0,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"20010", {{{1,0,0,2,3,0,1}, {0,0,0,0,0,0,0}, {1,0,0,1,1,0,1}, {0,0,0,1,2,0,0}, {0,0,0,1,2,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"20011", {{{3,0,1,2,2,0,0}, {0,0,0,0,0,0,0}, {2,0,1,1,1,0,0}, {1,0,0,1,1,0,0}, {1,0,0,1,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"20012", {{{2,0,0,3,4,0,2}, {0,0,0,0,0,0,0}, {1,0,0,2,3,0,1}, {1,0,0,1,1,0,1}, {1,0,0,1,1,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"1010", {{{1,0,0,1,1,0,0}, {0,0,0,1,1,0,0}, {0,0,0,1,1,0,0}, {0,0,0,1,1,0,0}, {1,0,0,1,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"10110", {{{1,0,0,1,1,0,1}, {1,0,0,0,0,0,1}, {2,0,0,0,0,0,1}, {2,0,0,0,0,0,1}, {1,0,0,1,1,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"101110", {{{3,0,0,1,1,0,1}, {1,0,0,1,1,0,0}, {1,0,0,2,2,0,0}, {1,0,0,2,2,0,0}, {3,0,0,1,1,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"101111", {{{1,0,3,3,1,0,0}, {0,0,1,2,1,0,0}, {1,0,1,3,2,0,0}, {1,0,1,3,2,0,0}, {1,0,3,3,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"101112", {{{3,0,0,1,4,0,3}, {2,0,0,0,1,0,2}, {3,0,0,1,2,0,3}, {3,0,0,1,2,0,3}, {3,0,0,1,4,0,3}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"10112", {{{1,0,0,2,3,0,1}, {0,0,0,1,2,0,0}, {1,0,0,1,3,0,1}, {1,0,0,1,3,0,1}, {1,0,0,2,3,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"10120", {{{3,2,0,0,0,0,1}, {1,1,0,0,0,0,0}, {2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {3,2,0,0,0,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"10121", {{{0,0,3,2,0,0,0}, {0,0,1,1,0,0,0}, {1,0,2,1,0,0,0}, {1,0,2,1,0,0,0}, {0,0,3,2,0,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"10122", {{{2,0,0,0,3,0,2}, {1,0,0,0,1,0,1}, {1,0,0,1,3,0,1}, {1,0,0,1,3,0,1}, {2,0,0,0,3,0,2}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"201", {{{0,0,2,2,0,1,0}, {0,0,0,0,0,0,0}, {0,0,1,1,0,1,0}, {0,0,1,1,0,0,0}, {0,0,1,1,0,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"210", {{{0,0,0,2,2,0,0}, {0,0,0,0,0,0,0}, {0,0,0,1,1,0,0}, {1,0,0,1,1,0,0}, {0,0,0,1,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2110", {{{3,0,0,0,0,0,2}, {0,0,0,0,0,0,0}, {2,0,0,0,0,0,1}, {1,0,0,1,1,0,1}, {1,0,0,0,0,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"21110", {{{2,0,0,3,3,0,0}, {0,0,0,0,0,0,0}, {1,0,0,2,2,0,0}, {3,0,0,1,1,0,1}, {1,0,0,1,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"21111", {{{1,0,2,5,3,0,0}, {0,0,0,0,0,0,0}, {1,0,1,3,2,0,0}, {1,0,3,3,1,0,0}, {0,0,1,2,1,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"21112", {{{5,0,0,1,3,0,5}, {0,0,0,0,0,0,0}, {3,0,0,1,2,0,3}, {3,0,0,1,4,0,3}, {2,0,0,0,1,0,2}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2112", {{{1,0,0,2,5,0,1}, {0,0,0,0,0,0,0}, {1,0,0,1,3,0,1}, {1,0,0,2,3,0,1}, {0,0,0,1,2,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2120", {{{3,2,0,0,0,0,1}, {0,0,0,0,0,0,0}, {2,1,0,0,0,0,1}, {3,2,0,0,0,0,1}, {1,1,0,0,0,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2121", {{{1,0,3,2,0,0,0}, {0,0,0,0,0,0,0}, {1,0,2,1,0,0,0}, {0,0,3,2,0,0,0}, {0,0,1,1,0,0,0}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2122", {{{2,0,0,1,4,0,2}, {0,0,0,0,0,0,0}, {1,0,0,1,3,0,1}, {2,0,0,0,3,0,2}, {1,0,0,0,1,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"2020", {{{4,2,0,0,0,0,2}, {0,0,0,0,0,0,0}, {2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"20020", {{{5,3,0,0,0,0,2}, {0,0,0,0,0,0,0}, {3,2,0,0,0,0,1}, {2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
    {"00020", {{{2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {2,1,0,0,0,0,1}, {0,0,0,0,0,0,0}, {3,2,0,0,0,0,1}, {2,1,0,0,0,0,1}, {2,0,0,0,0,0,2}}}},
    {"220", {{{3,1,0,0,0,0,2}, {0,0,0,0,0,0,0}, {2,1,0,0,0,0,1}, {2,0,0,0,0,0,2}, {1,0,0,0,0,0,1}, {0,0,0,0,0,0,0}, {0,0,0,0,0,0,0}}}},
}};

}  // namespace mpl
