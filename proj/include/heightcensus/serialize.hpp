#pragma once

// JSON forms of every exchanged object. Integers and rationals are decimal
// strings, dyadic endpoints are "m*2^e" strings, and key order is fixed so
// that identical inputs give identical bytes.

#include <string>

#include <json.hpp>

#include "heightcensus/auxfn.hpp"
#include "heightcensus/census.hpp"
#include "heightcensus/stackel.hpp"

namespace hc {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& v);
Json to_json(const Rational& v);
Json to_json(const Dyadic& v);
Json to_json(const IntPoly& p);
Json to_json(const RatPoly& p);
Json to_json(const RealEnclosure& e);
Json to_json(const Interval& v);
Json to_json(const ComplexBox& b);
Json to_json(const AlgebraicNumber& a);
Json to_json(const NumberFieldElement& e);
Json to_json(const BivarIntPoly& p);
Json to_json(const PointPair& pt);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntPoly int_poly_from_json(const Json& j);
RatPoly rat_poly_from_json(const Json& j);
/// {"minpoly": [...], "root": {...}} or {"minpoly": [...], "index": k}, or a bare rational string.
AlgebraicNumber algebraic_from_json(const Json& j);
BivarIntPoly bivar_from_json(const Json& j);
/// [{"alpha": ..., "beta": ...}, ...]
std::vector<PointPair> points_from_json(const Json& j);

Json to_json(const CensusResult& r, bool with_listing);
Json to_json(const Lemma1Report& r);
Json to_json(const Theorem1Report& r);
Json to_json(const PrefixCheck& r);
Json to_json(const AuxParams& p);
Json to_json(const SiegelResult& r);
Json to_json(const LiouvilleResult& r);
Json to_json(const PropagationReport& r);

/// Prefix file: all sequences plus a SHA-256 digest of the canonical dump of the rest.
Json prefix_to_json(const StackelPrefix& s);
/// Throws VerificationFailure when the digest does not match the content.
StackelPrefix prefix_from_json(const Json& j);
std::string sha256_hex(const std::string& data);

}  // namespace hc
