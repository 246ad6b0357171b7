#ifndef DICKE_PROPAGATOR_HPP
#define DICKE_PROPAGATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/spinops.hpp"
#include "dicke/state.hpp"
#include "dicke/tridiagonal.hpp"

namespace dicke
{

/// Eigenpairs of H restricted to an invariant subset of Dicke indices.
struct SpectralBlock
{
    std::vector< std::size_t > indices; // Dicke index m of each block row
    Eigen::VectorXd            eigenvalues;
    Eigen::MatrixXd            eigenvectors; // columns, block-local coordinates
};

/// Full spectrum of a real-symmetric Dicke-basis operator, possibly split
/// into parity sectors.
class SpectralDecomposition
{
public:
    SpectralDecomposition( std::size_t dim, std::vector< SpectralBlock > blocks )
        : dim_( dim ), blocks_( std::move( blocks ) )
    {}

    std::size_t                        dim() const noexcept { return dim_; }
    const std::vector< SpectralBlock > & blocks() const noexcept { return blocks_; }

    /// All eigenvalues, ascending.
    std::vector< double > eigenvalues() const
    {
        std::vector< double > all;
        for ( const auto & b : blocks_ )
            all.insert( all.end(), b.eigenvalues.data(), b.eigenvalues.data() + b.eigenvalues.size() );
        std::sort( all.begin(), all.end() );
        return all;
    }

    /// V diag(lambda) V^T on the full space.
    Eigen::MatrixXd reconstruct() const
    {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero( Eigen::Index( dim_ ), Eigen::Index( dim_ ) );
        for ( const auto & b : blocks_ )
        {
            const Eigen::MatrixXd Hb = b.eigenvectors * b.eigenvalues.asDiagonal() * b.eigenvectors.transpose();
            for ( std::size_t i = 0; i < b.indices.size(); ++i )
                for ( std::size_t j = 0; j < b.indices.size(); ++j )
                    H( Eigen::Index( b.indices[i] ), Eigen::Index( b.indices[j] ) ) = Hb( Eigen::Index( i ), Eigen::Index( j ) );
        }
        return H;
    }

private:
    std::size_t                  dim_;
    std::vector< SpectralBlock > blocks_;
};

namespace detail
{

inline SpectralBlock tridiagonal_block( const BandedHermitian & B, std::vector< std::size_t > indices )
{
    std::vector< double > d( B.diagonal().begin(), B.diagonal().end() );
    std::vector< double > e;
    if ( B.bandwidth() >= 1 )
        for ( const auto & z : B.band( 1 ) )
            e.push_back( z.real() );
    else
        e.assign( d.size() - 1, 0.0 );

    auto eig = tridiagonal_eigen( std::move( d ), e );
    return { std::move( indices ), std::move( eig.eigenvalues ), std::move( eig.eigenvectors ) };
}

inline SpectralBlock dense_block( const BandedHermitian & B, std::vector< std::size_t > indices )
{
    auto eig = symmetric_eigen( B.to_dense().real() );
    return { std::move( indices ), std::move( eig.eigenvalues ), std::move( eig.eigenvectors ) };
}

inline SpectralBlock any_block( const BandedHermitian & B, std::vector< std::size_t > indices )
{
    return B.bandwidth() <= 1 ? tridiagonal_block( B, std::move( indices ) ) : dense_block( B, std::move( indices ) );
}

} // namespace detail

/// Spectral decomposition of a real-symmetric H. Operators without odd
/// offsets (all three coupling schemes) are split into even/odd-m sectors,
/// each of which is tridiagonal. Throws std::invalid_argument when H has
/// non-negligible imaginary entries and NumericalError when QL stalls.
inline SpectralDecomposition diagonalize( const BandedHermitian & H )
{
    const double scale = std::max( 1.0, H.max_abs() );
    if ( H.max_abs_imag() > 1e-14 * scale )
        throw std::invalid_argument( "diagonalize: operator is not real symmetric in the Dicke basis" );

    const std::size_t n = H.dim();
    bool              parity_ok = n >= 2;
    for ( std::size_t k = 1; k <= H.bandwidth(); k += 2 )
        parity_ok = parity_ok && H.band_is_zero( k );

    std::vector< SpectralBlock > blocks;
    if ( parity_ok )
    {
        auto [even, odd] = parity_blocks( H );
        std::vector< std::size_t > ie, io;
        for ( std::size_t m = 0; m < n; ++m )
            ( m % 2 == 0 ? ie : io ).push_back( m );
        blocks.push_back( detail::any_block( even, std::move( ie ) ) );
        blocks.push_back( detail::any_block( odd, std::move( io ) ) );
    }
    else
    {
        std::vector< std::size_t > all( n );
        std::iota( all.begin(), all.end(), std::size_t( 0 ) );
        blocks.push_back( detail::any_block( H, std::move( all ) ) );
    }
    return SpectralDecomposition( n, std::move( blocks ) );
}

//
// Evolution from one fixed initial state. The eigenbasis coefficients
// V^T c(0) are computed once; each call to at() costs one real GEMV per block.
//
class TimeEvolver
{
public:
    TimeEvolver( const SpectralDecomposition & spec, const DickeState & initial )
        : spec_( &spec ), n_atoms_( initial.n_atoms() )
    {
        if ( spec.dim() != initial.dim() )
            throw std::invalid_argument( "evolve: state and operator dimensions differ" );

        coeffs_.reserve( spec.blocks().size() );
        for ( const auto & b : spec.blocks() )
        {
            Eigen::MatrixX2d c( Eigen::Index( b.indices.size() ), 2 );
            for ( std::size_t i = 0; i < b.indices.size(); ++i )
            {
                c( Eigen::Index( i ), 0 ) = initial[b.indices[i]].real();
                c( Eigen::Index( i ), 1 ) = initial[b.indices[i]].imag();
            }
            coeffs_.push_back( b.eigenvectors.transpose() * c );
        }
    }

    /// c(t) = V exp(-i Lambda t) V^T c(0)
    DickeState at( double t ) const
    {
        std::vector< cplx > amps( spec_->dim() );
        Eigen::MatrixX2d    rotated;
        for ( std::size_t bi = 0; bi < spec_->blocks().size(); ++bi )
        {
            const auto & b = spec_->blocks()[bi];
            const auto & a = coeffs_[bi];
            rotated.resize( a.rows(), 2 );
            for ( Eigen::Index k = 0; k < a.rows(); ++k )
            {
                const cplx z = cplx( a( k, 0 ), a( k, 1 ) ) * std::polar( 1.0, -b.eigenvalues( k ) * t );
                rotated( k, 0 ) = z.real();
                rotated( k, 1 ) = z.imag();
            }
            const Eigen::MatrixX2d c = b.eigenvectors * rotated;
            for ( std::size_t i = 0; i < b.indices.size(); ++i )
                amps[b.indices[i]] = cplx( c( Eigen::Index( i ), 0 ), c( Eigen::Index( i ), 1 ) );
        }
        return checked( std::move( amps ) );
    }

private:
    DickeState checked( std::vector< cplx > amps ) const
    {
        try
        {
            return DickeState::from_amplitudes( n_atoms_, std::move( amps ) );
        }
        catch ( const std::invalid_argument & e )
        {
            throw NumericalError( std::string( "evolve: unitarity lost: " ) + e.what() );
        }
    }

    const SpectralDecomposition *   spec_;
    std::size_t                     n_atoms_;
    std::vector< Eigen::MatrixX2d > coeffs_;
};

inline DickeState evolve( const DickeState & state, const SpectralDecomposition & spec, double t )
{
    return TimeEvolver( spec, state ).at( t );
}

inline void check_time_grid( std::span< const double > t_grid )
{
    if ( t_grid.empty() )
        throw std::invalid_argument( "time grid is empty" );
    for ( std::size_t i = 1; i < t_grid.size(); ++i )
        if ( !( t_grid[i] > t_grid[i - 1] ) )
            throw std::invalid_argument( "time grid must be strictly ascending" );
}

/// Calls fn(t, state) for every grid time; each state is propagated from
/// `state` directly, never chained from the previous point.
template < typename Fn >
void for_each_time( const DickeState & state, const SpectralDecomposition & spec, std::span< const double > t_grid, Fn && fn )
{
    check_time_grid( t_grid );
    const TimeEvolver ev( spec, state );
    for ( double t : t_grid )
        fn( t, ev.at( t ) );
}

inline std::vector< DickeState > evolve_series( const DickeState & state, const SpectralDecomposition & spec,
                                                std::span< const double > t_grid )
{
    std::vector< DickeState > out;
    out.reserve( t_grid.size() );
    for_each_time( state, spec, t_grid, [&]( double, DickeState s ) { out.push_back( std::move( s ) ); } );
    return out;
}

/// Closed-form one-axis twisting: c_m(t) = c_m(0) exp(-i (Omega/2) j_z(m)^2 t).
inline DickeState evolve_diagonal( const DickeState & state, const CouplingScheme & scheme, double t )
{
    if ( scheme.kind != Scheme::OneAxisTwisting )
        throw std::invalid_argument( "evolve_diagonal: only the one-axis twisting Hamiltonian is diagonal" );
    if ( !( scheme.rabi > 0.0 ) )
        throw std::invalid_argument( "evolve_diagonal: Omega_R must be > 0" );

    const std::size_t   N = state.n_atoms();
    std::vector< cplx > amps( state.amplitudes().begin(), state.amplitudes().end() );
    for ( std::size_t m = 0; m <= N; ++m )
    {
        const double jz = ( double( N ) - 2.0 * double( m ) ) / 2.0;
        amps[m] *= std::polar( 1.0, -( scheme.rabi / 2.0 ) * jz * jz * t );
    }
    return DickeState::from_amplitudes( N, std::move( amps ) );
}

} // namespace dicke

#endif // DICKE_PROPAGATOR_HPP
