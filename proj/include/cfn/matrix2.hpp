#pragma once

#include "cfn/rational.hpp"

namespace cfn {

struct Mat2 {
    Rational a{1}, b{0}, c{0}, d{1};

    static Mat2 identity() { return {}; }
    Rational det() const { return a * d - b * c; }
    Rational trace() const { return a + d; }
    /// Inverse of a determinant-one matrix.
    Mat2 sl2_inverse() const { return {d, -b, -c, a}; }
    Mat2 inverse() const;

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 Mat2::inverse() const {
    Rational k = det();
    return {d / k, -b / k, -c / k, a / k};
}

}  // namespace cfn
