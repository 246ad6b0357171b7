#ifndef DICKE_SCALING_HPP
#define DICKE_SCALING_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dicke/observables.hpp"
#include "dicke/spinops.hpp"
#include "dicke/state.hpp"

namespace dicke
{

/// y = prefactor * x^exponent, least squares in log-log space.
struct PowerLawFit
{
    double exponent        = 0.0;
    double exponent_stderr = 0.0;
    double prefactor       = 0.0;
};

inline PowerLawFit loglog_fit( std::span< const double > x, std::span< const double > y )
{
    if ( x.size() != y.size() || x.size() < 2 )
        throw std::invalid_argument( "loglog_fit: need at least two (x, y) pairs" );

    const std::size_t n = x.size();
    std::vector< double > lx( n ), ly( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( !( x[i] > 0 ) || !( y[i] > 0 ) )
            throw std::invalid_argument( "loglog_fit: values must be positive" );
        lx[i] = std::log( x[i] );
        ly[i] = std::log( y[i] );
    }

    double mx = 0, my = 0;
    for ( std::size_t i = 0; i < n; ++i )
    {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double( n );
    my /= double( n );

    double sxx = 0, sxy = 0;
    for ( std::size_t i = 0; i < n; ++i )
    {
        sxx += ( lx[i] - mx ) * ( lx[i] - mx );
        sxy += ( lx[i] - mx ) * ( ly[i] - my );
    }
    if ( sxx == 0 )
        throw std::invalid_argument( "loglog_fit: x values must not all be equal" );

    PowerLawFit f;
    f.exponent  = sxy / sxx;
    f.prefactor = std::exp( my - f.exponent * mx );
    if ( n > 2 )
    {
        double ssr = 0;
        for ( std::size_t i = 0; i < n; ++i )
        {
            const double r = ly[i] - ( my + f.exponent * ( lx[i] - mx ) );
            ssr += r * r;
        }
        f.exponent_stderr = std::sqrt( ssr / double( n - 2 ) / sxx );
    }
    return f;
}

inline constexpr std::size_t kMaxScalingAtoms = 2048;

struct ScalingOptions
{
    double window_factor  = 3.0;  // t_max = window_factor * characteristic_time(N)
    double spacing_factor = 0.05; // grid spacing = spacing_factor / N
    std::optional< InitialCondition > initial; // default: scheme-dependent
};

/// Time over which squeezing develops: N^{-2/3} for twisting (doubled for
/// V_M, whose J_x^2 coefficient is half of V_S's J_z^2), ln(N)/N for the
/// two-axis coupling.
inline double characteristic_time( Scheme s, std::size_t n_atoms )
{
    const double N = double( n_atoms );
    switch ( s )
    {
        case Scheme::OneAxisTwisting:
            return std::pow( N, -2.0 / 3.0 );
        case Scheme::MolmerSorensen:
            return 2.0 * std::pow( N, -2.0 / 3.0 );
        case Scheme::TwoAxisRaman:
            return std::log( N ) / N;
    }
    return 1.0;
}

/// One-axis twisting squeezes only from off-pole states, so it starts on the
/// equator; the other schemes start from c_N = 1.
inline InitialCondition default_squeezing_initial( Scheme s )
{
    return s == Scheme::OneAxisTwisting ? InitialCondition::coherent( std::numbers::pi / 2, 0.0 )
                                        : InitialCondition::all_down();
}

inline std::vector< double > uniform_grid( double spacing, double t_max )
{
    const auto            steps = std::size_t( std::ceil( t_max / spacing - 1e-9 ) );
    std::vector< double > g( steps + 1 );
    for ( std::size_t k = 0; k <= steps; ++k )
        g[k] = double( k ) * spacing;
    return g;
}

struct ScalingPoint
{
    std::size_t     n_atoms             = 0;
    double          min_variance        = 0.0; // min over t of (Delta J_n1)^2
    double          t_min_variance      = 0.0;
    double          min_xi2             = 0.0;
    double          t_min_xi2           = 0.0;
    double          variance_at_min_xi2 = 0.0;
    Eigen::Vector3d n1_at_min_xi2       = Eigen::Vector3d::Zero();
    std::size_t     grid_points         = 0;
};

struct ScalingReport
{
    CouplingScheme              scheme;
    InitialCondition            initial;
    ScalingOptions              options;
    std::vector< ScalingPoint > points;
    PowerLawFit                 variance_fit;       // min_variance vs N
    PowerLawFit                 t_min_xi2_fit;      // t_min_xi2 vs N
    PowerLawFit                 t_min_variance_fit; // t_min_variance vs N
};

inline ScalingPoint scaling_point( const CouplingScheme & scheme, std::size_t n_atoms, const ScalingOptions & opt )
{
    const auto initial = opt.initial.value_or( default_squeezing_initial( scheme.kind ) );
    const auto grid    = uniform_grid( opt.spacing_factor / ( double( n_atoms ) * scheme.rabi ),
                                       opt.window_factor * characteristic_time( scheme.kind, n_atoms ) / scheme.rabi );
    const auto scan    = min_squeezing_scan( scheme, n_atoms, grid, initial );

    ScalingPoint p;
    p.n_atoms        = n_atoms;
    p.grid_points    = grid.size();
    p.min_variance   = scan.min_variance;
    p.t_min_variance = scan.t_min_variance;
    p.min_xi2        = scan.xi_sq_min;
    p.t_min_xi2      = scan.t_min;
    if ( !scan.trajectory.empty() )
    {
        p.variance_at_min_xi2 = scan.trajectory[scan.i_min].min_variance;
        p.n1_at_min_xi2       = scan.trajectory[scan.i_min].direction_n1;
    }
    return p;
}

/// Min-over-time squeezing for each N plus power-law fits across N.
/// `n_list` must be ascending, even, and at most kMaxScalingAtoms.
inline ScalingReport scaling_study( const CouplingScheme & scheme, std::span< const std::size_t > n_list,
                                    const ScalingOptions & opt = {} )
{
    if ( n_list.size() < 2 )
        throw std::invalid_argument( "scaling_study: need at least two values of N" );
    for ( std::size_t i = 0; i < n_list.size(); ++i )
    {
        if ( n_list[i] == 0 || n_list[i] % 2 != 0 )
            throw std::invalid_argument( "scaling_study: every N must be even and positive" );
        if ( n_list[i] > kMaxScalingAtoms )
            throw std::invalid_argument( "scaling_study: N above the tested ceiling of 2048" );
        if ( i > 0 && n_list[i] <= n_list[i - 1] )
            throw std::invalid_argument( "scaling_study: N list must be ascending" );
    }

    ScalingReport rep;
    rep.scheme  = scheme;
    rep.initial = opt.initial.value_or( default_squeezing_initial( scheme.kind ) );
    rep.options = opt;
    for ( std::size_t n : n_list )
        rep.points.push_back( scaling_point( scheme, n, opt ) );

    std::vector< double > ns, var, txi, tvar;
    for ( const auto & p : rep.points )
    {
        ns.push_back( double( p.n_atoms ) );
        var.push_back( p.min_variance );
        txi.push_back( p.t_min_xi2 );
        tvar.push_back( p.t_min_variance );
    }
    rep.variance_fit       = loglog_fit( ns, var );
    rep.t_min_xi2_fit      = loglog_fit( ns, txi );
    rep.t_min_variance_fit = loglog_fit( ns, tvar );
    return rep;
}

} // namespace dicke

#endif // DICKE_SCALING_HPP
