#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rings/continuum.hpp"
#include "rings/galerkin.hpp"
#include "rings/glradial.hpp"
#include "rings/matching.hpp"
#include "rings/profile.hpp"

namespace rings {

// Shortest round-trippable decimal form (%.17g).
std::string fmt17(double x);

// `# m=.. N=.. mu=..`, one `# key=value` line per meta entry, then `x,y,value`
// rows in grid order. Import restores every sample bit-exactly.
void write_field_csv(std::ostream& os, const RingField& field);
void export_field(const RingField& field, const std::string& path);
RingField read_field_csv(std::istream& is);
RingField import_field(const std::string& path);

// One `# mode=n` block per mode with rows `r,u_n_comp0,u_n_comp1`.
void write_radial_dump(std::ostream& os, const RingField& field);

// `m N a_0 ... a_N residual flags`, flags comma-joined or `-`.
std::string solution_flags(const MatchSolution& s);
void write_solution_table(std::ostream& os, const MatchProblem& p, const std::vector<MatchSolution>& sols);

struct TableRow {
    int m = 0, N = 0;
    VectorXd a;
    double residual = 0.0;
    std::string flags;
};
std::vector<TableRow> read_solution_table(std::istream& is);

void write_branch_csv(std::ostream& os, const BranchResult& br);
void write_state_snapshot(std::ostream& os, const GalerkinGrid& grid, const GalerkinState& st);
void write_gl_csv(std::ostream& os, const GLSolution& sol);
void write_continuum_csv(std::ostream& os, const ContinuumSolution& sol);
void write_distance_table(std::ostream& os, const std::vector<DistanceRow>& rows);

// Opens `path` for writing ("-" selects stdout) and runs `fn` on it.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn);

}  // namespace rings
