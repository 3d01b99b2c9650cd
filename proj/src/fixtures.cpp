#include "rings/fixtures.hpp"

namespace rings {

const std::vector<ReferenceTable>& reference_tables() {
    static const std::vector<ReferenceTable> tables = {
        {3, 0, {{1.0}}},
        {2, 0, {{1.0}}},
        {3, 1, {{0, 0.577}}},
        {2, 1, {{0, 0.577}, {0.447, 0.365}}},
        {3, 2, {}},
        {2, 2, {{0.206, 0.215, -0.467}, {0.274, 0.255, 0.203}, {0.367, 0.507, -0.250}, {0.649, 0.293, -0.189}}},
        {3, 3,
         {{0, 0.286, 0, 0.433},
          {0, 0.331, 0, -0.262},
          {0, 0.617, 0, 0.171},
          {0.272, 0.056, 0.308, -0.492},
          {0.384, 0.219, 0.241, 0.366},
          {0.526, 0.280, -0.263, 0.378}}},
        {2, 3,
         {{0, 0.286, 0, -0.433},
          {0, 0.331, 0, 0.262},
          {0, 0.617, 0, -0.171},
          {0.162, 0.030, -0.324, 0.310},
          {0.135, 0.138, 0.146, -0.503},
          {0.335, 0.139, -0.190, -0.252},
          {0.284, 0.152, -0.138, 0.432},
          {0.578, 0.160, 0.217, -0.241},
          {0.197, 0.190, 0.169, 0.139},
          {0.745, 0.229, -0.182, 0.124},
          {0.235, 0.270, 0.390, -0.339},
          {0.454, 0.321, 0.027, -0.164},
          {0.540, 0.407, -0.288, 0.147},
          {0.096, 0.430, 0.246, -0.290},
          {0.268, 0.551, -0.200, -0.044}}},
        {3, 4,
         {{0.272, 0.056, 0.308, -0.492, 0},
          {0.384, 0.219, 0.241, 0.366, 0},
          {0.526, 0.280, -0.263, 0.378, 0},
          {0.266, 0.261, 0.053, 0.365, -0.186},
          {0.015, 0.265, -0.205, 0.351, -0.348},
          {0.156, 0.364, -0.221, -0.158, -0.430},
          {0.165, 0.130, 0.026, 0.432, 0.430},
          {0.375, 0.382, -0.000, -0.139, -0.348}}},
        {2, 4,
         {{0.00507, 0.156, 0.254, -0.152, 0.331},   {0.0113, 0.177, -0.209, -0.200, 0.323},
          {0.0398, 0.354, -0.252, 0.155, 0.309},    {0.0638, 0.268, 0.370, -0.00263, -0.239},
          {0.101, 0.102, 0.106, 0.111, -0.521},     {0.109, 0.264, -0.103, -0.0431, 0.416},
          {0.116, 0.286, -0.137, -0.0581, -0.286},  {0.118, 0.0649, -0.0855, -0.305, 0.367},
          {0.130, 0.0308, -0.170, -0.286, -0.223},  {0.153, 0.150, 0.140, 0.125, 0.105},
          {0.174, 0.188, 0.233, 0.319, -0.390},     {0.182, 0.290, -0.432, -0.0747, -0.0239},
          {0.206, 0.406, 0.0189, 0.0982, -0.209},   {0.210, 0.155, 0.0123, -0.151, 0.465},
          {0.215, 0.588, -0.186, -0.0964, 0.122},   {0.228, 0.181, 0.484, -0.249, -0.0914},
          {0.264, 0.166, -0.0465, -0.199, -0.186},  {0.283, 0.0848, 0.349, 0.209, -0.349},
          {0.285, 0.464, 0.0109, -0.270, 0.196},    {0.298, 0.148, -0.0825, 0.436, -0.0631},
          {0.324, 0.117, -0.110, 0.101, -0.414},    {0.342, 0.111, -0.236, -0.224, 0.0429},
          {0.361, 0.291, 0.123, -0.0475, -0.136},   {0.363, 0.0968, -0.119, 0.152, 0.278},
          {0.390, 0.343, 0.143, -0.361, 0.220},     {0.416, 0.229, 0.0212, 0.273, -0.306},
          {0.425, 0.483, -0.278, 0.0722, 0.0480},   {0.505, 0.138, -0.402, 0.0699, -0.218},
          {0.544, 0.111, 0.136, 0.173, -0.269},     {0.569, 0.128, 0.263, -0.209, -0.0422},
          {0.579, 0.309, -0.0885, -0.0870, 0.129},  {0.640, 0.333, -0.270, 0.187, -0.102},
          {0.663, 0.197, 0.0636, -0.216, 0.171},    {0.800, 0.185, -0.160, 0.127, -0.0911}}},
    };
    return tables;
}

const std::vector<Erratum>& reference_errata() {
    static const std::vector<Erratum> errata = {
        {2, 3, {0.454, 0.321, 0.027, -0.164}, {0.465, 0.321, 0.027, -0.164},
         "printed a_0 = 0.454 leaves residual 9.6e-3; the isolated root nearby has a_0 = 0.46459"},
    };
    return errata;
}

std::vector<std::vector<double>> corrected_rows(const ReferenceTable& t) {
    auto rows = t.rows;
    for (const auto& e : reference_errata()) {
        if (e.m % 2 != t.m % 2 || e.N != t.N) continue;
        for (auto& r : rows)
            if (r == e.printed) r = e.corrected;
    }
    return rows;
}

const ReferenceTable* find_reference(int m, int N) {
    for (const auto& t : reference_tables())
        if (t.N == N && t.m % 2 == m % 2) return &t;
    return nullptr;
}

}  // namespace rings

namespace rings {

namespace {

bool orbit_close(const VectorXd& a, const std::vector<double>& row) {
    if (a.size() != Eigen::Index(row.size())) return false;
    const VectorXd r = Eigen::Map<const VectorXd>(row.data(), Eigen::Index(row.size()));
    VectorXd Ra = a;
    for (Eigen::Index i = 1; i < a.size(); i += 2) Ra[i] = -Ra[i];
    for (const VectorXd& g : {a, Ra, VectorXd(-a), VectorXd(-Ra)})
        if ((g - r).cwiseAbs().maxCoeff() < kReferenceTol) return true;
    return false;
}

}  // namespace

ReferenceComparison compare_with_reference(const MatchProblem& p, const std::vector<MatchSolution>& sols) {
    ReferenceComparison cmp;
    const ReferenceTable* t = find_reference(p.m, p.N);
    if (!t) return cmp;
    cmp.has_table = true;
    const auto rows = corrected_rows(*t);
    cmp.reference_rows = rows.size();
    for (const auto& row : rows) {
        bool hit = false;
        for (const auto& s : sols)
            if (s.primary() && orbit_close(s.a, row)) hit = true;
        if (hit) ++cmp.matched_rows;
        else cmp.missing.push_back(row);
    }
    for (const auto& s : sols) {
        if (!s.primary()) continue;
        ++cmp.primary;
        bool hit = false;
        for (const auto& row : rows)
            if (orbit_close(s.a, row)) hit = true;
        if (!hit) ++cmp.unmatched_primary;
    }
    return cmp;
}

}  // namespace rings
