#pragma once

// JSON documents for every public result type. Doubles are written with 17
// significant digits; one document per line.

#include <istream>
#include <string>

#include "json.hpp"

#include "hypiso/classgeom.hpp"
#include "hypiso/conjugacy.hpp"
#include "hypiso/reality.hpp"

namespace hypiso::io {

using Json = nlohmann::ordered_json;

/// Compact single-line rendering with %.17g numbers.
std::string dump(const Json& j);

/// {"n", "matrix"} with n = size - 1 and row-major entries.
Json matrix_doc(const Matrix& m);
/// Throws ParseError.
Matrix parse_matrix_doc(const Json& j);
/// Reads one document per non-empty line. Throws ParseError.
std::vector<Matrix> read_matrix_stream(std::istream& in);

Json to_json(const Matrix& m);  ///< array of rows
Json to_json(const Vector& v);
Json to_json(const RotationAngles& a);
Json to_json(const FixedPointData& d);
Json to_json(const ClassificationReport& r);
Json to_json(const InvariantTuple& t);
Json to_json(const RealityCertificate& c);
Json to_json(const OracleReport& r);
Json to_json(const ConjugacyAnswer& a);
Json to_json(const PlaneDecomposition& d);
Json to_json(const OrthogonalSplitting& s);
Json to_json(const FibrationDescriptor& d);

}  // namespace hypiso::io
