#ifndef DICKE_RAMAN_HPP
#define DICKE_RAMAN_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dicke::raman
{

inline constexpr double kHbar = 1.054571817e-34; // J s

/// Experimental inputs. Frequencies are angular (rad/s).
struct RamanParams
{
    double omega1   = 0.0; // single-photon Rabi frequency, beam 1
    double omega2   = 0.0; // single-photon Rabi frequency, beam 2
    double delta_m  = 0.0; // detuning from the molecular intermediate state
    double delta_a  = 0.0; // detuning from the atomic intermediate state
    double eta      = 1.0; // free-bound amplitude eta_{0 m_b}, |eta|^2 is the Franck-Condon factor
    double gamma_m  = 0.0; // excited molecular linewidth
    double omega_gg = 0.0; // ground-state splitting omega_{g'g}
    double k        = 0.0; // laser wavenumber |k1| ~ |k2| (1/m)
    double mass     = 0.0; // atomic mass (kg)
};

inline void validate( const RamanParams & p )
{
    auto positive = []( double v, const char * name ) {
        if ( !( v > 0.0 ) || !std::isfinite( v ) )
            throw std::invalid_argument( std::string( "RamanParams: " ) + name + " must be positive" );
    };
    positive( p.omega1, "omega1" );
    positive( p.omega2, "omega2" );
    if ( p.delta_m == 0.0 || !std::isfinite( p.delta_m ) )
        throw std::invalid_argument( "RamanParams: delta_m must be nonzero" );
    if ( p.delta_a == 0.0 || !std::isfinite( p.delta_a ) )
        throw std::invalid_argument( "RamanParams: delta_a must be nonzero" );
    if ( !( p.eta > 0.0 && p.eta <= 1.0 ) )
        throw std::invalid_argument( "RamanParams: eta must lie in (0, 1]" );
    positive( p.gamma_m, "gamma_m" );
    if ( !( p.omega_gg >= 0.0 ) )
        throw std::invalid_argument( "RamanParams: omega_gg must be >= 0" );
    positive( p.k, "k" );
    positive( p.mass, "mass" );
}

inline constexpr double kDecoherenceWarnRatio = 10.0;

struct EffectiveRabi
{
    double omega_m            = 0.0; // Omega_1 Omega_2 |eta|^2 / Delta_M
    double omega_a            = 0.0; // Omega_1 Omega_2 / Delta_A
    double suppression_ratio  = 0.0; // omega_m / omega_a = |eta|^2 Delta_A / Delta_M
    double decoherence_figure = 0.0; // Delta_M / gamma_M
    bool   decoherence_warning = false;
};

inline EffectiveRabi effective_rabi( const RamanParams & p )
{
    validate( p );
    EffectiveRabi r;
    const double prod    = p.omega1 * p.omega2;
    r.omega_m            = prod * p.eta * p.eta / p.delta_m;
    r.omega_a            = prod / p.delta_a;
    r.suppression_ratio  = p.eta * p.eta * p.delta_a / p.delta_m;
    r.decoherence_figure = std::abs( p.delta_m ) / p.gamma_m;
    r.decoherence_warning = r.decoherence_figure <= kDecoherenceWarnRatio;
    return r;
}

struct Resonances
{
    double molecular = 0.0; // rad/s
    double atomic    = 0.0; // rad/s
};

/// Co-propagating beams (K ~ 0): each atom of the pair changes internal
/// state, so the pair process needs twice the single-atom splitting.
inline Resonances raman_resonances( const RamanParams & p )
{
    if ( !( p.omega_gg >= 0.0 ) )
        throw std::invalid_argument( "raman_resonances: omega_gg must be >= 0" );
    return { 2.0 * p.omega_gg, p.omega_gg };
}

/// Counter-propagating beams (K ~ 2k). An atom absorbing both photons recoils
/// by hbar K: hbar K^2 / 2M. A pair shares the same two photons (hbar K/2 per
/// atom, total mass 2M): half of that.
inline Resonances bragg_resonances( const RamanParams & p, bool counterpropagating )
{
    if ( !counterpropagating )
        return raman_resonances( p );
    if ( !( p.k > 0.0 ) || !( p.mass > 0.0 ) )
        throw std::invalid_argument( "bragg_resonances: k and mass must be positive" );
    const double K      = 2.0 * p.k;
    const double atomic = kHbar * K * K / ( 2.0 * p.mass );
    return { atomic / 2.0, atomic };
}

inline double to_hz( double angular ) { return angular / ( 2.0 * std::numbers::pi ); }
inline double wavenumber( double wavelength_m ) { return 2.0 * std::numbers::pi / wavelength_m; }

} // namespace dicke::raman

#endif // DICKE_RAMAN_HPP
