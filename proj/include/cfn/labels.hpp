#pragma once

#include <array>
#include <compare>
#include <string>

namespace cfn {

/// Edge labels of the left-associative rank-3 diagram. Vertices are
/// {a,b,e}, {e,c,d}, {a,b,f}, {f,c,d}; e sits on the vector side, f on the dual side.
struct Rank3Label {
    int a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

    bool admissible() const;
    /// Empty when admissible, else the first violated vertex triple.
    std::string violation() const;
    int order() const { return a + b + c; }
    std::string to_string() const;

    friend auto operator<=>(const Rank3Label&, const Rank3Label&) = default;
};

/// Two loops a (matrix X) and c (matrix Y) joined by a bar b.
struct BarbellLabel {
    int a = 0, c = 0, b = 0;

    bool admissible() const;
    std::string to_string() const;

    friend auto operator<=>(const BarbellLabel&, const BarbellLabel&) = default;
};

/// Table addressing (a,b,c,d,i,j) with 1-based multiplicity indices.
struct IndexTuple {
    int a = 0, b = 0, c = 0, d = 0, i = 1, j = 1;

    std::string to_string() const;
    friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;
};

}  // namespace cfn
