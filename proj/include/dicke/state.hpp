#ifndef DICKE_STATE_HPP
#define DICKE_STATE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke
{
using cplx = std::complex< double >;

inline constexpr double kNormTolerance = 1e-10;

/// Pure state of N two-level atoms restricted to the symmetric (Dicke)
/// subspace. Amplitude m multiplies |m>_down |N-m>_up, so J_z = (N-2m)/2
/// on basis ket m.
///
/// Instances are immutable; every operation on a state returns a new one.
class DickeState
{
public:
    /// Takes ownership of `amplitudes`. Throws std::invalid_argument when
    /// N = 0, the length is not N+1, or the norm deviates from 1 by more
    /// than kNormTolerance.
    static DickeState from_amplitudes( std::size_t n_atoms, std::vector< cplx > amplitudes )
    {
        check_shape( n_atoms, amplitudes.size() );
        const double n2 = norm_squared( amplitudes );
        if ( std::abs( n2 - 1.0 ) > kNormTolerance )
            throw std::invalid_argument( "DickeState: amplitudes not normalized (|c|^2 = " + std::to_string( n2 ) + ")" );
        return DickeState( n_atoms, std::move( amplitudes ) );
    }

    /// Rescales `amplitudes` to unit norm.
    static DickeState normalized( std::size_t n_atoms, std::vector< cplx > amplitudes )
    {
        check_shape( n_atoms, amplitudes.size() );
        const double n2 = norm_squared( amplitudes );
        if ( !( n2 > 0.0 ) || !std::isfinite( n2 ) )
            throw std::invalid_argument( "DickeState: cannot normalize a zero or non-finite vector" );
        const double scale = 1.0 / std::sqrt( n2 );
        for ( auto & c : amplitudes )
            c *= scale;
        return DickeState( n_atoms, std::move( amplitudes ) );
    }

    std::size_t n_atoms() const noexcept { return n_atoms_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }

    std::span< const cplx > amplitudes() const noexcept { return amplitudes_; }
    const cplx & operator[]( std::size_t m ) const { return amplitudes_.at( m ); }

    double norm() const { return std::sqrt( norm_squared( amplitudes_ ) ); }

    /// Same state times a global phase e^{i alpha}.
    DickeState with_global_phase( double alpha ) const
    {
        auto amps = amplitudes_;
        const cplx phase = std::polar( 1.0, alpha );
        for ( auto & c : amps )
            c *= phase;
        return DickeState( n_atoms_, std::move( amps ) );
    }

private:
    DickeState( std::size_t n, std::vector< cplx > a ) : n_atoms_( n ), amplitudes_( std::move( a ) ) {}

    static void check_shape( std::size_t n_atoms, std::size_t len )
    {
        if ( n_atoms == 0 )
            throw std::invalid_argument( "DickeState: N must be >= 1" );
        if ( len != n_atoms + 1 )
            throw std::invalid_argument( "DickeState: expected N+1 amplitudes" );
    }

    static double norm_squared( std::span< const cplx > a )
    {
        double s = 0.0;
        for ( const auto & c : a )
            s += std::norm( c );
        return s;
    }

    std::size_t         n_atoms_;
    std::vector< cplx > amplitudes_;
};

/// <a|b>
inline cplx overlap( const DickeState & a, const DickeState & b )
{
    if ( a.dim() != b.dim() )
        throw std::invalid_argument( "overlap: dimension mismatch" );
    cplx s = 0.0;
    for ( std::size_t m = 0; m < a.dim(); ++m )
        s += std::conj( a[m] ) * b[m];
    return s;
}

/// |<a|b>|^2
inline double state_fidelity( const DickeState & a, const DickeState & b ) { return std::norm( overlap( a, b ) ); }

/// c_m = delta_{m0}: every atom up, J_z = +N/2.
inline DickeState all_up_state( std::size_t n_atoms )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "all_up_state: N must be >= 1" );
    std::vector< cplx > a( n_atoms + 1, 0.0 );
    a.front() = 1.0;
    return DickeState::from_amplitudes( n_atoms, std::move( a ) );
}

/// c_m = delta_{mN}: every atom down, J_z = -N/2.
inline DickeState all_down_state( std::size_t n_atoms )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "all_down_state: N must be >= 1" );
    std::vector< cplx > a( n_atoms + 1, 0.0 );
    a.back() = 1.0;
    return DickeState::from_amplitudes( n_atoms, std::move( a ) );
}

/// Every atom in cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.
/// Binomial weights are evaluated in log space so N in the thousands is safe.
inline DickeState coherent_spin_state( std::size_t n_atoms, double theta, double phi )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "coherent_spin_state: N must be >= 1" );

    const double N   = double( n_atoms );
    const double cu  = std::cos( theta / 2 );
    const double sd  = std::sin( theta / 2 );
    const double lcu = std::log( std::abs( cu ) );
    const double lsd = std::log( std::abs( sd ) );
    const double lnf = std::lgamma( N + 1 );

    std::vector< cplx > a( n_atoms + 1, 0.0 );
    for ( std::size_t m = 0; m <= n_atoms; ++m )
    {
        const double k_up   = N - double( m );
        const double k_down = double( m );
        // 0^0 = 1 at the poles
        if ( ( cu == 0.0 && k_up > 0 ) || ( sd == 0.0 && k_down > 0 ) )
            continue;

        double log_mag = 0.5 * ( lnf - std::lgamma( k_down + 1 ) - std::lgamma( k_up + 1 ) );
        if ( k_up > 0 )
            log_mag += k_up * lcu;
        if ( k_down > 0 )
            log_mag += k_down * lsd;

        double sign = 1.0;
        if ( cu < 0 && ( n_atoms - m ) % 2 == 1 )
            sign = -sign;
        if ( sd < 0 && m % 2 == 1 )
            sign = -sign;

        a[m] = sign * std::exp( log_mag ) * std::polar( 1.0, k_down * phi );
    }
    return DickeState::normalized( n_atoms, std::move( a ) );
}

/// Recipe for a starting state, resolved once N is known.
struct InitialCondition
{
    enum class Kind
    {
        AllUp,
        AllDown,
        Coherent
    };

    Kind   kind  = Kind::AllDown;
    double theta = 0.0;
    double phi   = 0.0;

    static InitialCondition all_up() { return { Kind::AllUp }; }
    static InitialCondition all_down() { return { Kind::AllDown }; }
    static InitialCondition coherent( double theta, double phi ) { return { Kind::Coherent, theta, phi }; }

    DickeState make( std::size_t n_atoms ) const
    {
        switch ( kind )
        {
            case Kind::AllUp:
                return all_up_state( n_atoms );
            case Kind::AllDown:
                return all_down_state( n_atoms );
            case Kind::Coherent:
                return coherent_spin_state( n_atoms, theta, phi );
        }
        throw std::logic_error( "InitialCondition: bad kind" );
    }

    std::string to_string() const
    {
        switch ( kind )
        {
            case Kind::AllUp:
                return "all_up";
            case Kind::AllDown:
                return "all_down";
            case Kind::Coherent:
                return "coherent:" + std::to_string( theta ) + "," + std::to_string( phi );
        }
        return "?";
    }
};

} // namespace dicke

#endif // DICKE_STATE_HPP
