#pragma once

#include <string>
#include <vector>

#include "rings/matching.hpp"

namespace rings {

// Published 3-significant-digit root tables of the matching equation.
// Odd m tables are listed under m = 3, even m tables under m = 2; the
// equation depends on m only through its parity.
struct ReferenceTable {
    int m = 0;
    int N = 0;
    std::vector<std::vector<double>> rows;
};

// A printed row that is not a root, with the nearest root rounded the same way.
struct Erratum {
    int m = 0;
    int N = 0;
    std::vector<double> printed;
    std::vector<double> corrected;
    std::string note;
};

const std::vector<ReferenceTable>& reference_tables();
const std::vector<Erratum>& reference_errata();

// Table rows with errata applied.
std::vector<std::vector<double>> corrected_rows(const ReferenceTable& t);

// Table for (m, N) if one is embedded (matched on the parity of m).
const ReferenceTable* find_reference(int m, int N);

constexpr double kReferenceTol = 5e-3;

struct ReferenceComparison {
    bool has_table = false;
    std::size_t reference_rows = 0;
    std::size_t matched_rows = 0;      // rows within tolerance of some primary root
    std::size_t primary = 0;
    std::size_t unmatched_primary = 0;  // primary roots not in the table
    std::vector<std::vector<double>> missing;
    bool pass() const {
        return has_table && matched_rows == reference_rows && unmatched_primary == 0 && primary == reference_rows;
    }
};

// A row matches a root when some member of the root's {a, Ra, -a, -Ra} orbit
// agrees entrywise within kReferenceTol.
ReferenceComparison compare_with_reference(const MatchProblem& p, const std::vector<MatchSolution>& sols);

}  // namespace rings
