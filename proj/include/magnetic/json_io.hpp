#pragma once

// JSON encodings of the library's values and the lattice and form file
// formats read by the command line tool.

#include "magnetic/elliptic.hpp"
#include "magnetic/lift.hpp"
#include "magnetic/vvmf.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace magnetic {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Integer& x);
Json to_json(const Rational& x);
/// {order, coeffs} in the smallest cyclotomic field containing x.
Json to_json(const Cyclotomic& x);
Json to_json(const CycloMatrix& m);
Json to_json(const FourierSeries& f);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);

/// Accepts integers or strings "p" and "p/q".
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
FourierSeries series_from_json(const Json& j);

/// 64-bit FNV-1a of the Gram matrix entries, as 16 hex digits.
std::string lattice_hash(const EvenLattice& l);

/// {gram: [[...]]} or {builtin: "U+U+E8(-1)"}, optionally with e and eprime.
struct LatticeFile {
    EvenLattice lattice;
    std::optional<IntVector> e;
    std::optional<RatVector> eprime;
};

LatticeFile lattice_from_json(const Json& j);
Json lattice_to_json(const EvenLattice& l);
Json cusp_to_json(const CuspData& c);

/// {schema, weight, lattice_ref, components: [{coset: [...], prec, coeffs: {"l": "c"}}]}
/// with coset given by a representative in lattice coordinates.
Json form_to_json(const VVModularForm& f);
/// Components not listed are zero with the precision of the listed ones;
/// throws InputError when lattice_ref does not match.
VVModularForm form_from_json(const Json& j, std::shared_ptr<const WeilRep> rep);

Json report_to_json(const DivisibilityReport& r);
Json report_to_json(const MagnetReport& r);
Json report_to_json(const ClassicalReport& r);
Json report_to_json(const JReport& r);
Json expansion_to_json(const LiftExpansion& e, const CuspData& cusp);
Json fkdd_to_json(const FkdDCoefficients& f, int digits);

/// Reads and parses a JSON file; InputError names the file and the line and column.
Json read_json_file(const std::string& path);

}  // namespace magnetic
