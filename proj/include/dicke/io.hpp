#ifndef DICKE_IO_HPP
#define DICKE_IO_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

#include "dicke/state.hpp"

namespace dicke
{

/// {"n_atoms": N, "amplitudes": [[re, im], ...]}
inline nlohmann::json to_json( const DickeState & s )
{
    nlohmann::json amps = nlohmann::json::array();
    for ( const auto & c : s.amplitudes() )
        amps.push_back( { c.real(), c.imag() } );
    return { { "n_atoms", s.n_atoms() }, { "amplitudes", std::move( amps ) } };
}

inline DickeState state_from_json( const nlohmann::json & j )
{
    const auto          n = j.at( "n_atoms" ).get< std::size_t >();
    std::vector< cplx > amps;
    for ( const auto & pair : j.at( "amplitudes" ) )
    {
        if ( !pair.is_array() || pair.size() != 2 )
            throw std::invalid_argument( "state_from_json: amplitudes must be [re, im] pairs" );
        amps.emplace_back( pair[0].get< double >(), pair[1].get< double >() );
    }
    return DickeState::from_amplitudes( n, std::move( amps ) );
}

/// Always 17 significant digits, so repeated runs give byte-identical text.
inline std::string format_double( double x )
{
    if ( std::isnan( x ) )
        return "nan";
    if ( x == 0.0 )
        x = 0.0; // no "-0"
    char buf[64];
    auto [end, ec] = std::to_chars( buf, buf + sizeof buf, x, std::chars_format::general, 17 );
    if ( ec != std::errc() )
        return "nan";
    return std::string( buf, end );
}

} // namespace dicke

#endif // DICKE_IO_HPP
