#ifndef EXPSUM_TESTS_PAPER_MODELS_HPP
#define EXPSUM_TESTS_PAPER_MODELS_HPP

#include <cmath>

#include "expsum/model.hpp"

// The four bundled example signals (also shipped as data/y*.json).
// y1: proper with one 6-periodic term, P = 6, k = -29..29
// y2: real proper, P = 3, k = 1..40
// y3: extended non-periodic, P = 8, k = -29..29
// y4: extended with one 8-periodic term, P = 8, k = -47..47
namespace paper {

using expsum::Complex;
using expsum::ExponentialSumModel;
using expsum::ExpTerm;

inline ExponentialSumModel y1() {
    return ExponentialSumModel{{
        ExpTerm{{-1.095, std::sqrt(0.0101)}, {{3.2, 4.5}}},
        ExpTerm{{0.0, -2.647}, {{-0.55, 0.0}}},
        ExpTerm{{0.0, 1.3711}, {{-3.4, 0.1}}},
        ExpTerm{{-std::sqrt(1.89), 0.0}, {{-0.88, 0.0}}},
        ExpTerm{{-std::sqrt(0.47), 3.217}, {{0.542, 7.1}}},
        ExpTerm{{0.0, -2.0}, {{-0.96, 1.06}}},
    }};
}

inline ExponentialSumModel y2() {
    return ExponentialSumModel{{
        ExpTerm{{-6.74, 0.0}, {{-0.00572, 0.0}}},
        ExpTerm{{-3.187, 0.0}, {{0.1074, 0.0}}},
        ExpTerm{{-1.312, 0.0}, {{-0.685, 0.0}}},
        ExpTerm{{-1.212, 0.0}, {{-0.4264, 0.0}}},
        ExpTerm{{0.223, 0.0}, {{0.4605, 0.0}}},
    }};
}

inline ExponentialSumModel y3() {
    return ExponentialSumModel{{
        ExpTerm{{-0.1236, 2.2371},
                {{3.1, 0.5}, {0.5, 0.0}, {-0.002, 0.0}, {1.6, 0.0},
                 {0.55, -4.23}}},
        ExpTerm{{0.011, -std::sqrt(2.2)}, {{-15.02, 0.0}}},
    }};
}

inline ExponentialSumModel y4() {
    return ExponentialSumModel{{
        ExpTerm{{-0.1, -0.73}, {{3.46, -0.5}, {-1.6, 7.3}, {-2.4, 0.0}}},
        ExpTerm{{0.05, -std::sqrt(10.11)}, {{-3.8, -1.999}, {-0.2, -0.4}}},
        ExpTerm{{0.0, 1.5},
                {{-7.33, 7.033}, {3.89, 0.0}, {2.48, -0.45}, {-5.3, 0.01}}},
    }};
}

} // namespace paper

#endif // EXPSUM_TESTS_PAPER_MODELS_HPP
