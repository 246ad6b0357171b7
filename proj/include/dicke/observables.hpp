#ifndef DICKE_OBSERVABLES_HPP
#define DICKE_OBSERVABLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/propagator.hpp"
#include "dicke/spinops.hpp"
#include "dicke/state.hpp"

namespace dicke
{

/// First and second moments of (J_x, J_y, J_z). Covariance entries are the
/// symmetrized Cov(J_a, J_b) = <J_a J_b + J_b J_a>/2 - <J_a><J_b>.
struct SpinMoments
{
    Eigen::Vector3d mean       = Eigen::Vector3d::Zero();
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();

    /// Variance of J.n for a unit vector n.
    double variance_along( const Eigen::Vector3d & n ) const { return n.dot( covariance * n ); }
};

/// O(N): applies the three banded J operators once and takes inner products.
inline SpinMoments spin_moments( const DickeState & state )
{
    const std::size_t N = state.n_atoms();
    const auto        psi = state.amplitudes();

    std::array< std::vector< cplx >, 3 > Jpsi = {
        collective_op( N, Axis::x ).apply( psi ),
        collective_op( N, Axis::y ).apply( psi ),
        collective_op( N, Axis::z ).apply( psi ),
    };

    auto inner = []( std::span< const cplx > a, std::span< const cplx > b ) {
        cplx s = 0.0;
        for ( std::size_t i = 0; i < a.size(); ++i )
            s += std::conj( a[i] ) * b[i];
        return s;
    };

    SpinMoments out;
    for ( int a = 0; a < 3; ++a )
        out.mean( a ) = inner( psi, Jpsi[a] ).real();
    for ( int a = 0; a < 3; ++a )
        for ( int b = a; b < 3; ++b )
        {
            // <J_a J_b> = <J_a psi | J_b psi>; its real part is the symmetrized product
            const double sym = inner( Jpsi[a], Jpsi[b] ).real();
            out.covariance( a, b ) = out.covariance( b, a ) = sym - out.mean( a ) * out.mean( b );
        }
    return out;
}

struct SqueezingResult
{
    std::optional< double > xi_squared; // unset when degenerate
    double                  min_variance   = 0.0;
    Eigen::Vector3d         direction_n1   = Eigen::Vector3d::Zero();
    double                  mean_spin_norm = 0.0;
    bool                    degenerate     = false;
};

namespace detail
{

// Fixes the sign of an axis: first component with |c| > 1e-12 is positive.
inline Eigen::Vector3d canonical_axis( Eigen::Vector3d v )
{
    for ( int i = 0; i < 3; ++i )
        if ( std::abs( v( i ) ) > 1e-12 )
        {
            if ( v( i ) < 0 )
                v = -v;
            break;
        }
    return v;
}

// Orthonormal pair spanning the plane perpendicular to unit vector u.
inline std::pair< Eigen::Vector3d, Eigen::Vector3d > perpendicular_basis( const Eigen::Vector3d & u )
{
    const Eigen::Vector3d seed = std::abs( u.x() ) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d       e1   = u.cross( seed ).normalized();
    Eigen::Vector3d       e2   = u.cross( e1 );
    return { e1, e2 };
}

} // namespace detail

inline constexpr double kDegenerateMeanFraction = 1e-6;

/// Squeezing parameter xi^2 = N (Delta J_n1)^2 / |<J>|^2 with n1 chosen in the
/// plane perpendicular to the mean spin so as to minimize the variance.
inline SqueezingResult squeezing( const SpinMoments & mom, std::size_t n_atoms )
{
    SqueezingResult r;
    r.mean_spin_norm = mom.mean.norm();

    if ( r.mean_spin_norm < kDegenerateMeanFraction * double( n_atoms ) )
    {
        r.degenerate = true;
        Eigen::SelfAdjointEigenSolver< Eigen::Matrix3d > es( mom.covariance );
        r.min_variance = es.eigenvalues()( 0 );
        r.direction_n1 = detail::canonical_axis( es.eigenvectors().col( 0 ) );
        return r;
    }

    const auto [e1, e2] = detail::perpendicular_basis( mom.mean / r.mean_spin_norm );
    Eigen::Matrix2d M;
    M( 0, 0 ) = e1.dot( mom.covariance * e1 );
    M( 1, 1 ) = e2.dot( mom.covariance * e2 );
    M( 0, 1 ) = M( 1, 0 ) = e1.dot( mom.covariance * e2 );

    Eigen::SelfAdjointEigenSolver< Eigen::Matrix2d > es( M );
    const Eigen::Vector2d w = es.eigenvectors().col( 0 );

    r.min_variance = es.eigenvalues()( 0 );
    r.direction_n1 = detail::canonical_axis( ( w( 0 ) * e1 + w( 1 ) * e2 ).normalized() );
    r.xi_squared   = double( n_atoms ) * r.min_variance / ( r.mean_spin_norm * r.mean_spin_norm );
    return r;
}

inline SqueezingResult squeezing( const DickeState & state ) { return squeezing( spin_moments( state ), state.n_atoms() ); }

/// Compares the returned n1 against `samples` random directions perpendicular
/// to <J>; true when none of them has a smaller variance (up to `slack`).
inline bool squeezing_direction_is_optimal( const SpinMoments & mom, const SqueezingResult & r, std::mt19937_64 & rng,
                                            int samples = 64, double slack = 1e-9 )
{
    if ( r.degenerate )
        return true;
    const auto [e1, e2] = detail::perpendicular_basis( mom.mean.normalized() );
    std::uniform_real_distribution< double > angle( 0.0, 2.0 * std::numbers::pi );
    const double scale = std::max( 1.0, std::abs( r.min_variance ) );
    for ( int i = 0; i < samples; ++i )
    {
        const double a = angle( rng );
        const Eigen::Vector3d n = std::cos( a ) * e1 + std::sin( a ) * e2;
        if ( mom.variance_along( n ) < r.min_variance - slack * scale )
            return false;
    }
    return true;
}

struct GhzOverlap
{
    double fidelity  = 0.0;
    double eta_phase = 0.0; // arg(c_N) - arg(c_0), wrapped to (-pi, pi]
};

/// Best overlap with [|N>_up|0>_down + eta |0>_up|N>_down]/sqrt(2) over the
/// phase eta: (|c_0| + |c_N|)^2 / 2.
inline GhzOverlap ghz_fidelity( const DickeState & state )
{
    const cplx   c0 = state[0];
    const cplx   cN = state[state.n_atoms()];
    const double a0 = std::abs( c0 );
    const double aN = std::abs( cN );

    GhzOverlap g;
    g.fidelity = std::min( 1.0, ( a0 + aN ) * ( a0 + aN ) / 2.0 );
    if ( a0 >= 1e-14 && aN >= 1e-14 )
        g.eta_phase = std::arg( cN * std::conj( c0 ) );
    return g;
}

/// (|c_0|^2, |c_N|^2)
inline std::pair< double, double > edge_populations( const DickeState & state )
{
    return { std::norm( state[0] ), std::norm( state[state.n_atoms()] ) };
}

/// Largest spacing a squeezing scan accepts: 0.1 / (N Omega_R).
inline double max_squeezing_grid_spacing( std::size_t n_atoms, double rabi = 1.0 )
{
    return 0.1 / ( double( n_atoms ) * rabi );
}

inline void check_squeezing_grid( std::span< const double > t_grid, std::size_t n_atoms, double rabi = 1.0 )
{
    check_time_grid( t_grid );
    const double limit = max_squeezing_grid_spacing( n_atoms, rabi );
    for ( std::size_t i = 1; i < t_grid.size(); ++i )
        if ( t_grid[i] - t_grid[i - 1] > limit * ( 1.0 + 1e-12 ) )
            throw GridResolutionError( "squeezing scan: grid spacing " + std::to_string( t_grid[i] - t_grid[i - 1] )
                                       + " exceeds 0.1/N = " + std::to_string( limit ) );
}

/// Propagates `initial` under `scheme` over a grid, using the closed-form
/// phases for one-axis twisting and the spectral path otherwise.
template < typename Fn >
void scan_states( const CouplingScheme & scheme, const DickeState & initial, std::span< const double > t_grid, Fn && fn )
{
    if ( scheme.kind == Scheme::OneAxisTwisting )
    {
        check_time_grid( t_grid );
        for ( double t : t_grid )
            fn( t, evolve_diagonal( initial, scheme, t ) );
        return;
    }
    const auto spec = diagonalize( hamiltonian( scheme, initial.n_atoms() ) );
    for_each_time( initial, spec, t_grid, fn );
}

struct SqueezingScan
{
    std::vector< double >          times;
    std::vector< SqueezingResult > trajectory;

    // grid minimum of xi^2 over non-degenerate points
    double t_min      = 0.0;
    double xi_sq_min  = std::numeric_limits< double >::infinity();
    std::size_t i_min = 0;

    // grid minimum of the variance along n1
    double t_min_variance = 0.0;
    double min_variance   = std::numeric_limits< double >::infinity();
};

/// xi^2(t) from a fixed initial state (default c_N = 1, J_z = -N/2).
/// Throws GridResolutionError when the spacing exceeds 0.1/N.
inline SqueezingScan min_squeezing_scan( const CouplingScheme & scheme, std::size_t n_atoms,
                                         std::span< const double > t_grid,
                                         const InitialCondition & initial = InitialCondition::all_down() )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "min_squeezing_scan: N must be >= 1" );
    check_squeezing_grid( t_grid, n_atoms, scheme.rabi );

    SqueezingScan scan;
    scan.times.assign( t_grid.begin(), t_grid.end() );
    scan.trajectory.reserve( t_grid.size() );

    scan_states( scheme, initial.make( n_atoms ), t_grid, [&]( double t, const DickeState & s ) {
        auto r = squeezing( s );
        if ( r.xi_squared && *r.xi_squared < scan.xi_sq_min )
        {
            scan.xi_sq_min = *r.xi_squared;
            scan.t_min     = t;
            scan.i_min     = scan.trajectory.size();
        }
        if ( r.min_variance < scan.min_variance )
        {
            scan.min_variance   = r.min_variance;
            scan.t_min_variance = t;
        }
        scan.trajectory.push_back( std::move( r ) );
    } );
    return scan;
}

} // namespace dicke

#endif // DICKE_OBSERVABLES_HPP
