#pragma once

#include <string>

#include "json.hpp"
#include "marginvote/axioms.hpp"
#include "marginvote/canonical.hpp"
#include "marginvote/data.hpp"
#include "marginvote/noncomp.hpp"

namespace marginvote {

using Json = nlohmann::ordered_json;

Json to_json(const CandidateSet& s);
Json to_json(const Profile& p);
Json to_json(const RelProfile& rp);
Json to_json(const PairMatrix& m);
Json to_json(const WeightedDigraph& g);
Json to_json(const RuleOutput& out);
Json to_json(const Move& m);
Json to_json(const AxiomReport& r);
Json to_json(const RelAxiomReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const CanonicalForm& f);
Json to_json(const ScanReport& r);
Json to_json(const TripleCounts& t);

/// {"candidates": [...], "ballots": [{"voter": "0", "ranking": "b>a~c"}, ...]}.
/// Throws ParseError on malformed input.
Profile profile_from_json(const Json& j);
RelProfile rel_profile_from_json(const Json& j);

/// One JSON object per line: the initial margins, then each move with the
/// hash of the margins after it.
std::string trace_jsonl(const MoveTrace& trace);

}  // namespace marginvote
