#pragma once

#include <string>
#include <utility>
#include <vector>

#include "marginvote/core.hpp"
#include "marginvote/data.hpp"

namespace fixtures {

inline std::string path(const std::string& file) { return std::string(MARGINVOTE_FIXTURES) + "/" + file; }

inline marginvote::RawElection election(const std::string& file) { return marginvote::load_election(path(file)); }
inline marginvote::Profile profile(const std::string& file) { return marginvote::to_lobi(election(file)); }

using Groups = std::vector<std::pair<std::int64_t, std::string>>;

// Three voters b / a c, four c a b, two a b c.
inline const Groups kTiedCycle = {{3, "b>a~c"}, {4, "c>a>b"}, {2, "a>b>c"}};

inline const Groups kSpoiler = {{37, "D>M>R"}, {3, "D>R>M"}, {32, "R>M>D"}, {28, "M>R>D"}};
inline const Groups kSpoilerShifted = {{37, "D>M>R"}, {3, "D>R>M"}, {29, "R>M>D"}, {31, "M>R>D"}};

inline const Groups kSixVoterP = {{2, "d>c>b>a"}, {1, "c>a>b>d"}, {1, "b>d>a>c"}, {1, "b>d>c>a"}, {1, "c>b>d>a"}};
inline const Groups kSixVoterQ = {{1, "a>c>b>d"}, {2, "b>d>c>a"}, {1, "c>b>d>a"}, {2, "d>c>b>a"}};

/// The eighteen ballots of the Debord profile shared by both six-voter profiles.
inline const Groups kSixVoterDebord = {
    {2, "b>a>c>d"}, {2, "d>c>b>a"}, {1, "b>d>a>c"}, {1, "c>a>b>d"}, {2, "c>a>b>d"}, {2, "d>b>c>a"},
    {1, "c>b>a>d"}, {1, "d>a>c>b"}, {2, "d>a>b>c"}, {2, "c>b>d>a"}, {1, "d>c>a>b"}, {1, "b>a>d>c"},
};

inline marginvote::Profile make(const marginvote::CandidateSet& c, const Groups& groups) {
  return marginvote::profile_from_counts(c, groups);
}

inline marginvote::CandidateSet abc() { return {"a", "b", "c"}; }
inline marginvote::CandidateSet abcd() { return {"a", "b", "c", "d"}; }
inline marginvote::CandidateSet dmr() { return {"D", "M", "R"}; }

}  // namespace fixtures
