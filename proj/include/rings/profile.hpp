#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rings/glradial.hpp"
#include "rings/matching.hpp"
#include "rings/rdsys.hpp"

namespace rings {

enum class ProfileMode { TwoRegion, ThreeRegion };
enum class SeamBlend { Hard, Cosine };

struct ProfileContext {
    int m = 1;
    int N = 0;
    double mu = 0.0;
    VectorXd a;
    double r0 = 0.0;  // core / far boundary
    double r1 = 0.5;  // middle / far boundary sits at r1 mu^(-1/2) in three-region mode
    int sign = 1;
    ProfileMode mode = ProfileMode::TwoRegion;
    SeamBlend blend = SeamBlend::Hard;
    std::shared_ptr<const GLSolution> gl;
    TuringData turing;
    BifCoefficients coeffs;

    // Human-readable list of violated ordering conditions on r0 and r1.
    std::vector<std::string> violations() const;
};

struct ProfileParams {
    double r0 = -1.0;  // <= 0 selects default_r0
    double r1 = 0.5;
    int sign = 1;
    ProfileMode mode = ProfileMode::TwoRegion;
    SeamBlend blend = SeamBlend::Hard;
};

// Balances the Bessel asymptotic error O(1/r0) against the envelope error
// O(mu r0^2) of the leading-order far field, keeping r0 clear of the
// turning point of J_{mN+1}.
double default_r0(int m, int N, double mu);

ProfileContext make_context(const RDSystem& sys, int m, const VectorXd& a, double mu,
                            const ProfileParams& params = {});
// Reuses an already computed homoclinic.
ProfileContext make_context(const RDSystem& sys, std::shared_ptr<const GLSolution> gl, int m,
                            const VectorXd& a, double mu, const ProfileParams& params = {});

// Unscaled branches of u_n / (2 a_n) at radius r.
Vec2 core_branch(const ProfileContext& ctx, int n, double r);
Vec2 middle_branch(const ProfileContext& ctx, int n, double r);
Vec2 far_branch(const ProfileContext& ctx, int n, double r);

// u_n(r) for 0 <= n <= N.
Vec2 radial_amplitude(const ProfileContext& ctx, int n, double r);
// All modes at one radius.
std::vector<Vec2> radial_amplitudes(const ProfileContext& ctx, double r);

// Full field u(r, theta) = u_0 + 2 sum u_n cos(m n theta).
Vec2 field_vector(const ProfileContext& ctx, double r, double theta);
// Projection onto U0* (projection = 0) or U1* (projection = 1) at (x, y).
double field_value(const ProfileContext& ctx, double x, double y, int projection = 0);

struct FieldGrid {
    double half_width = 20.0;
    int points = 101;   // samples per side
    bool disc = true;   // keep only samples with r <= half_width
};

struct RingField {
    FieldGrid grid;
    int m = 0, N = 0;
    double mu = 0.0;
    int projection = 0;
    std::vector<std::string> meta;  // extra "key=value" header entries
    std::vector<double> x, y, values;
    std::vector<double> radial_r;
    std::vector<std::vector<Vec2>> mode_amplitudes;  // [n][k] at radial_r[k]
};

RingField synthesize_field(const ProfileContext& ctx, const FieldGrid& grid, int projection = 0,
                           int threads = 1);

// R: a_n -> (-1)^n a_n.
VectorXd apply_R(const VectorXd& a);

// max |field(R a)(r, theta) - field(a)(r, theta + pi/m)| over random samples.
double r_rotation_defect(const ProfileContext& ctx, int samples = 200, unsigned seed = 7);

// max over r in [r_lo, r_hi] of |<U0*, u_n(r)>| on a fine grid.
double mode_max(const ProfileContext& ctx, int n, double r_lo, double r_hi, double dr = 0.01);

// max |core - far| / max |far| over [r0, r0 + 2 pi] for mode n.
double seam_mismatch(const ProfileContext& ctx, int n);

}  // namespace rings
