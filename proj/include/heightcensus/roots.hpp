#pragma once

// Certified isolation of the complex roots of squarefree integer polynomials.
//
// Approximations come from Aberth iteration (double, then MPFR). They are
// certified with the Gershgorin discs of the matrix diag(z) - W 1^T, whose
// characteristic polynomial is p / lead(p): the disc around z_i - W_i of
// radius (n-1)|W_i| holds exactly one root whenever the discs are disjoint.
// Centres are snapped to be conjugate-symmetric so every box of a non-real
// root comes with its exact mirror image.

#include <optional>
#include <string>
#include <vector>

#include "heightcensus/bigfloat.hpp"
#include "heightcensus/poly.hpp"

namespace hc {

struct ComplexBox {
    Dyadic re_lo, re_hi, im_lo, im_hi;

    /// Largest side length.
    Dyadic width() const;
    bool intersects(const ComplexBox& o) const;
    bool contains(const ComplexBox& o) const;
    ComplexBox mirrored() const { return {re_lo, re_hi, -im_hi, -im_lo}; }
    /// Box is its own mirror image; an isolating box with this property holds a real root.
    bool self_conjugate() const { return im_lo == -im_hi; }
    CInterval to_interval(mpfr_prec_t prec) const;
    static ComplexBox from_interval(const CInterval& z);

    friend bool operator==(const ComplexBox&, const ComplexBox&) = default;
};

/// Default enclosure width used for stored root boxes: 2^-53.
inline Dyadic default_width() { return Dyadic::pow2(-53); }

/// Working precision for a target width: bits(width) plus 64 guard bits, at least 64.
mpfr_prec_t starting_precision(const Dyadic& width);

/// Isolating boxes for all roots of a squarefree p, sorted by certified (Re, Im).
/// Throws DomainError for non-squarefree input or width <= 0, and
/// PrecisionExhausted when the precision cap is reached.
std::vector<ComplexBox> isolate_roots(const IntPoly& p, const Dyadic& width);

/// Same, skipping the squarefree check (caller guarantees it).
std::vector<ComplexBox> isolate_roots_unchecked(const IntPoly& p, const Dyadic& width);

/// Index of the unique box in `boxes` meeting `target`, refining `boxes` (by
/// re-isolating p at finer widths) until exactly one candidate remains.
/// Returns the refined box of that root at width <= width.
ComplexBox refine_root(const IntPoly& p, const ComplexBox& target, const Dyadic& width);

/// Among the roots of p, the one whose box is the only one meeting `z` once
/// the roots are refined far enough. Returns the index into the canonical
/// ordering. Requires that z encloses one root of p, shrinking as `enclose`
/// is called with finer widths.
template <class EncloseFn>
std::size_t match_root(const IntPoly& p, EncloseFn&& enclose);

}  // namespace hc

#include "heightcensus/detail/match_root.hpp"
