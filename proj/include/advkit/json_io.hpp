#ifndef ADVKIT_JSON_IO_HPP
#define ADVKIT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "advkit/adversary.hpp"
#include "advkit/normcheck.hpp"
#include "advkit/querymodel.hpp"
#include "advkit/surgery.hpp"

namespace advkit {

using Json = nlohmann::ordered_json;

// Matrix wire format: {"rows": r, "cols": c, "entries": [[re, im], ...]},
// entries in row-major order. States are encoded as single-column matrices.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json state_to_json(const Vector& v);
Vector state_from_json(const Json& j);

Json problem_to_json(const EvaluationProblem& problem);
EvaluationProblem problem_from_json(const Json& j);

Json algorithm_to_json(const QueryAlgorithm& alg);
QueryAlgorithm algorithm_from_json(const Json& j);

Json surgery_to_json(const SurgeryResult& result, const SurgeryReport& report);
SurgeryResult surgery_from_json(const Json& j);

Json certificate_to_json(const AdversaryCertificate& cert);
AdversaryCertificate certificate_from_json(const Json& j);

Json inequality_to_json(const InequalityReport& report);
Json verdict_to_json(const BoundVerdict& verdict);

Json load_json_file(const std::string& path);          // throws io_error / parse_error
void save_json_file(const std::string& path, const Json& j);

}  // namespace advkit

#endif
