#pragma once

#include <json.hpp>

#include "bess/error.hpp"
#include "bess/frequentist.hpp"
#include "bess/model.hpp"
#include "bess/nmin.hpp"
#include "bess/posterior.hpp"
#include "bess/search.hpp"
#include "bess/simulation.hpp"

namespace bess {

using Json = nlohmann::ordered_json;

// Readers throw Error(E_VALIDATION) on missing or mistyped fields, so a bad
// request body never escapes as a parser exception.

Json evidence_to_json(const EvidenceSpec& e);
EvidenceSpec evidence_from_json(const Json& j);

void to_json(Json& j, const OutcomeFamily& v);
void from_json(const Json& j, OutcomeFamily& v);
void to_json(Json& j, const Arms& v);
void from_json(const Json& j, Arms& v);
void to_json(Json& j, const PriorSpec& v);
void from_json(const Json& j, PriorSpec& v);
void to_json(Json& j, const ModelSpec& v);
void from_json(const Json& j, ModelSpec& v);
void to_json(Json& j, const HypothesisSpec& v);
void from_json(const Json& j, HypothesisSpec& v);
void to_json(Json& j, const PairEvidence& v);
void from_json(const Json& j, PairEvidence& v);
void to_json(Json& j, const RngSeed& v);
void from_json(const Json& j, RngSeed& v);

void to_json(Json& j, const PosteriorOptions& v);
void from_json(const Json& j, PosteriorOptions& v);
void to_json(Json& j, const NminOptions& v);
void from_json(const Json& j, NminOptions& v);
void to_json(Json& j, const SearchOptions& v);
void from_json(const Json& j, SearchOptions& v);

void to_json(Json& j, const PosteriorResult& v);
void from_json(const Json& j, PosteriorResult& v);
void to_json(Json& j, const NminResult& v);
void from_json(const Json& j, NminResult& v);
void to_json(Json& j, const SampleSizeRequest& v);
void from_json(const Json& j, SampleSizeRequest& v);
void to_json(Json& j, const SampleSizeResult& v);
void from_json(const Json& j, SampleSizeResult& v);
void to_json(Json& j, const EvidenceConfidenceRow& v);
void from_json(const Json& j, EvidenceConfidenceRow& v);
void to_json(Json& j, const FreqDesign& v);
void from_json(const Json& j, FreqDesign& v);

void to_json(Json& j, const TruthPair& v);
void from_json(const Json& j, TruthPair& v);
void to_json(Json& j, const TrialData& v);
void from_json(const Json& j, TrialData& v);
void to_json(Json& j, const DecisionTally& v);
void from_json(const Json& j, DecisionTally& v);
void to_json(Json& j, const OperatingCharacteristics& v);
void from_json(const Json& j, OperatingCharacteristics& v);
void to_json(Json& j, const CombinedMetrics& v);
void from_json(const Json& j, CombinedMetrics& v);
void to_json(Json& j, const ErrorRateStudy& v);
void from_json(const Json& j, ErrorRateStudy& v);
void to_json(Json& j, const MatchedComparison& v);
void from_json(const Json& j, MatchedComparison& v);
void to_json(Json& j, const MatchedComparisonResult& v);
void from_json(const Json& j, MatchedComparisonResult& v);
void to_json(Json& j, const PriorSensitivity& v);
void from_json(const Json& j, PriorSensitivity& v);
void to_json(Json& j, const PriorSensitivityResult& v);
void from_json(const Json& j, PriorSensitivityResult& v);
void to_json(Json& j, const TruthScenario& v);
void from_json(const Json& j, TruthScenario& v);
void to_json(Json& j, const DesignSpec& v);
void from_json(const Json& j, DesignSpec& v);
void to_json(Json& j, const DesignRun& v);
void from_json(const Json& j, DesignRun& v);
void to_json(Json& j, const SsrRequest& v);
void from_json(const Json& j, SsrRequest& v);
void to_json(Json& j, const SsrOutcome& v);
void from_json(const Json& j, SsrOutcome& v);

/// {"code": ..., "message": ..., "details": ...}
Json error_json(ErrorCode code, const std::string& message, const Json& details = nullptr);

/// Parses text, mapping syntax errors to E_VALIDATION.
Json parse_json(const std::string& text);

}  // namespace bess
