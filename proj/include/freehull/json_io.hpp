#pragma once

#include "freehull/gns.hpp"
#include "freehull/moments.hpp"
#include "freehull/pencils.hpp"
#include "freehull/poly.hpp"
#include "freehull/relax.hpp"
#include "freehull/sdp.hpp"

#include <json.hpp>

#include <string>

namespace freehull {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Point file: {"g":..., "n":..., "matrices":[[[...]],...]} row-major.
Json tuple_to_json(const MatrixTuple& X);
MatrixTuple tuple_from_json(const Json& j);

/// Moment file: {"g","n","max_deg","values":{"<word digits>": [[...]]}};
/// only class representatives are required; invariants are validated on load.
Json moments_to_json(const MomentSequence& Y);
MomentSequence moments_from_json(const Json& j);

/// Pencil file: size, g, symmetric/skew slot counts, dense coefficients.
Json pencil_to_json(const AffinePencil& L);
AffinePencil pencil_from_json(const Json& j);

Json certificate_to_json(const InfeasibilityCertificate& cert);

/// Verdict report: {"status","margin","witness_file","certificate":{...}}.
Json verdict_to_json(const Verdict& v, const std::string& witness_file = "");

Json gns_to_json(const GnsResult& r);

Json separation_to_json(const SeparationFunctional& f);

Json quad_certificate_to_json(const QuadModuleCertificate& cert);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace freehull
