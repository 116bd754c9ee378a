// SPDX-License-Identifier: MIT
#pragma once

#include "jh/cyclotomic.hpp"
#include "jh/forms.hpp"
#include "jh/group.hpp"

#include <map>
#include <vector>

namespace jh {

// Exponent of e(tr(N T) + R Z^t + w omega0): a holds the coefficients of tau, u, zeta
// (degree 2) or tau (degree 1), s those of the elliptic variables.
struct Exponent {
    std::vector<Rat> a, s;
    Rat w;
    bool operator<(const Exponent& o) const {
        if (a != o.a) return a < o.a;
        if (s != o.s) return s < o.s;
        return w < o.w;
    }
    bool operator==(const Exponent&) const = default;
    bool integral() const;
};

Exponent exponent_of(const RawKey2& k, i64 m);
Exponent exponent_of(const RawKey1& k, i64 m);

// A truncated series complete on every term with all diagonal exponents <= window.
// A targeted series instead holds exactly the terms that a fixed element list maps into
// the window; applying those elements to it is complete on the window.
struct FormalSeries {
    std::size_t degree = 2;
    int weight = 0;
    i64 index = 1;
    i64 window = 0;
    bool targeted = false;
    std::map<Exponent, CycScalar> terms;
};

struct SlashedTerm {
    Exponent e;
    CycScalar multiplier;
};

// e(tr(N^ T^)) |_k gamma^ = det(A^)^k e(tr(N^ X)) e(tr(A^t N^ A^ T^)), X = B^ A^t.
// Throws SlashError("NonParabolic") for a nonzero lower-left block.
SlashedTerm slash_term(const JacobiElement& g, const Exponent& e, int k);

// All raw terms of the table with diagonal exponents <= window; the table must cover them.
FormalSeries to_series(const CoeffTable& t, i64 window);
// Every preimage under the elements of an output term with diagonal <= out_window.
FormalSeries targeted_series(const CoeffTable& t, const std::vector<JacobiElement>& elements, i64 out_window);
// Collapses onto invariant keys up to the largest bound whose representatives lie in the window.
CoeffTable to_table(const FormalSeries& s);

// Largest window on which every preimage of an output term stays inside the input window.
i64 formal_output_window(const std::vector<JacobiElement>& elements, i64 index, i64 window);

// prefactor * sum of slash images; keeps output terms inside the output window (the
// target window for a targeted series) and asserts rational coefficients there. A surviving
// non-integral exponent is an error when the dense input window holds all of its preimages.
FormalSeries apply_formal(const FormalSeries& s, const std::vector<JacobiElement>& elements, const Rat& prefactor);

}  // namespace jh
