#ifndef DICKE_SPINOPS_HPP
#define DICKE_SPINOPS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dicke/state.hpp"

namespace dicke
{

//
// Hermitian operator on the Dicke basis stored by diagonals.
//
// The main diagonal is kept as real numbers and only the upper diagonals
// (offset 1..bandwidth) are stored, so the reconstructed matrix is Hermitian
// exactly. band(k)[i] is the element (i, i+k).
//
class BandedHermitian
{
public:
    BandedHermitian( std::size_t dim, std::size_t bandwidth )
        : dim_( dim ), diag_( dim, 0.0 ), upper_()
    {
        if ( dim == 0 )
            throw std::invalid_argument( "BandedHermitian: dim must be >= 1" );
        bandwidth = std::min( bandwidth, dim - 1 );
        upper_.reserve( bandwidth );
        for ( std::size_t k = 1; k <= bandwidth; ++k )
            upper_.emplace_back( dim - k, cplx( 0.0 ) );
    }

    static BandedHermitian identity( std::size_t dim )
    {
        BandedHermitian I( dim, 0 );
        std::fill( I.diag_.begin(), I.diag_.end(), 1.0 );
        return I;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t bandwidth() const noexcept { return upper_.size(); }

    std::span< const double > diagonal() const noexcept { return diag_; }
    std::span< double >       diagonal() noexcept { return diag_; }

    /// Upper diagonal at `offset` >= 1.
    std::span< const cplx > band( std::size_t offset ) const { return upper_.at( offset - 1 ); }
    std::span< cplx >       band( std::size_t offset ) { return upper_.at( offset - 1 ); }

    cplx operator()( std::size_t i, std::size_t j ) const
    {
        if ( i >= dim_ || j >= dim_ )
            throw std::out_of_range( "BandedHermitian: index out of range" );
        if ( i == j )
            return diag_[i];
        const std::size_t k = i < j ? j - i : i - j;
        if ( k > bandwidth() )
            return 0.0;
        return i < j ? upper_[k - 1][i] : std::conj( upper_[k - 1][j] );
    }

    /// Is the band at `offset` identically zero?
    bool band_is_zero( std::size_t offset ) const
    {
        if ( offset == 0 )
            return std::all_of( diag_.begin(), diag_.end(), []( double x ) { return x == 0.0; } );
        if ( offset > bandwidth() )
            return true;
        const auto & b = upper_[offset - 1];
        return std::all_of( b.begin(), b.end(), []( const cplx & z ) { return z == cplx( 0.0 ); } );
    }

    double max_abs_imag() const
    {
        double m = 0.0;
        for ( const auto & b : upper_ )
            for ( const auto & z : b )
                m = std::max( m, std::abs( z.imag() ) );
        return m;
    }

    /// Largest absolute entry.
    double max_abs() const
    {
        double m = 0.0;
        for ( double x : diag_ )
            m = std::max( m, std::abs( x ) );
        for ( const auto & b : upper_ )
            for ( const auto & z : b )
                m = std::max( m, std::abs( z ) );
        return m;
    }

    std::vector< cplx > apply( std::span< const cplx > x ) const
    {
        if ( x.size() != dim_ )
            throw std::invalid_argument( "BandedHermitian::apply: dimension mismatch" );
        std::vector< cplx > y( dim_ );
        for ( std::size_t i = 0; i < dim_; ++i )
            y[i] = diag_[i] * x[i];
        for ( std::size_t k = 1; k <= bandwidth(); ++k )
        {
            const auto & b = upper_[k - 1];
            for ( std::size_t i = 0; i + k < dim_; ++i )
            {
                y[i] += b[i] * x[i + k];
                y[i + k] += std::conj( b[i] ) * x[i];
            }
        }
        return y;
    }

    /// <psi|H|psi>
    double expectation( std::span< const cplx > psi ) const
    {
        const auto hpsi = apply( psi );
        cplx s = 0.0;
        for ( std::size_t i = 0; i < dim_; ++i )
            s += std::conj( psi[i] ) * hpsi[i];
        return s.real();
    }

    Eigen::MatrixXcd to_dense() const
    {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero( Eigen::Index( dim_ ), Eigen::Index( dim_ ) );
        for ( std::size_t i = 0; i < dim_; ++i )
            for ( std::size_t j = ( i > bandwidth() ? i - bandwidth() : 0 ); j < std::min( dim_, i + bandwidth() + 1 ); ++j )
                M( Eigen::Index( i ), Eigen::Index( j ) ) = ( *this )( i, j );
        return M;
    }

    BandedHermitian & operator*=( double a )
    {
        for ( double & x : diag_ )
            x *= a;
        for ( auto & b : upper_ )
            for ( auto & z : b )
                z *= a;
        return *this;
    }

    BandedHermitian & operator+=( const BandedHermitian & o ) { return axpy( 1.0, o ); }
    BandedHermitian & operator-=( const BandedHermitian & o ) { return axpy( -1.0, o ); }

private:
    BandedHermitian & axpy( double a, const BandedHermitian & o )
    {
        if ( o.dim_ != dim_ )
            throw std::invalid_argument( "BandedHermitian: dimension mismatch" );
        if ( o.bandwidth() > bandwidth() )
        {
            for ( std::size_t k = bandwidth() + 1; k <= o.bandwidth(); ++k )
                upper_.emplace_back( dim_ - k, cplx( 0.0 ) );
        }
        for ( std::size_t i = 0; i < dim_; ++i )
            diag_[i] += a * o.diag_[i];
        for ( std::size_t k = 1; k <= o.bandwidth(); ++k )
            for ( std::size_t i = 0; i + k < dim_; ++i )
                upper_[k - 1][i] += a * o.upper_[k - 1][i];
        return *this;
    }

    std::size_t                        dim_;
    std::vector< double >              diag_;
    std::vector< std::vector< cplx > > upper_;
};

inline BandedHermitian operator*( double a, BandedHermitian H ) { return H *= a; }
inline BandedHermitian operator+( BandedHermitian A, const BandedHermitian & B ) { return A += B; }
inline BandedHermitian operator-( BandedHermitian A, const BandedHermitian & B ) { return A -= B; }

/// A^2 for Hermitian A; bandwidth doubles.
inline BandedHermitian square( const BandedHermitian & A )
{
    const std::size_t n  = A.dim();
    const std::size_t b  = A.bandwidth();
    BandedHermitian   C( n, 2 * b );

    for ( std::size_t i = 0; i < n; ++i )
    {
        const std::size_t klo = i > b ? i - b : 0;
        const std::size_t khi = std::min( n - 1, i + b );
        for ( std::size_t j = i; j <= std::min( n - 1, i + 2 * b ); ++j )
        {
            cplx s = 0.0;
            for ( std::size_t k = std::max( klo, j > b ? j - b : 0 ); k <= std::min( khi, j + b ); ++k )
                s += A( i, k ) * A( k, j );
            if ( i == j )
                C.diagonal()[i] = s.real();
            else
                C.band( j - i )[i] = s;
        }
    }
    return C;
}

enum class Axis
{
    x,
    y,
    z
};

enum class Scheme
{
    MolmerSorensen,  // V_M = (Omega/4)(J_x^2 - N)
    OneAxisTwisting, // V_S = (Omega/2) J_z^2
    TwoAxisRaman     // (Omega/2)(J_x^2 - J_y^2)
};

struct CouplingScheme
{
    Scheme kind = Scheme::TwoAxisRaman;
    double rabi = 1.0; // Omega_R; 1 in dimensionless units
};

inline std::string_view to_string( Scheme s )
{
    switch ( s )
    {
        case Scheme::MolmerSorensen:
            return "molmer-sorensen";
        case Scheme::OneAxisTwisting:
            return "one-axis";
        case Scheme::TwoAxisRaman:
            return "two-axis-raman";
    }
    return "?";
}

inline Scheme scheme_from_string( std::string_view s )
{
    if ( s == "molmer-sorensen" || s == "ms" || s == "MolmerSorensen" )
        return Scheme::MolmerSorensen;
    if ( s == "one-axis" || s == "oat" || s == "OneAxisTwisting" )
        return Scheme::OneAxisTwisting;
    if ( s == "two-axis-raman" || s == "raman" || s == "TwoAxisRaman" )
        return Scheme::TwoAxisRaman;
    throw std::invalid_argument( "unknown coupling scheme '" + std::string( s ) + "'" );
}

/// <m+1|J_-|m> = sqrt((m+1)(N-m)); J_- lowers J_z by flipping one atom down.
inline double ladder_element( std::size_t n_atoms, std::size_t m )
{
    return std::sqrt( double( m + 1 ) * double( n_atoms - m ) );
}

/// Collective spin operator J_axis with spin-1/2 normalization,
///   J_x = (a_d^+ a_u + a_u^+ a_d)/2,  J_y = i(a_d^+ a_u - a_u^+ a_d)/2,
///   J_z = (a_u^+ a_u - a_d^+ a_d)/2,
/// giving <m+1|J_x|m> = s_m/2 and <m+1|J_y|m> = i s_m/2, with [J_x,J_y] = iJ_z.
inline BandedHermitian collective_op( std::size_t n_atoms, Axis axis )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "collective_op: N must be >= 1" );

    const std::size_t dim = n_atoms + 1;
    if ( axis == Axis::z )
    {
        BandedHermitian J( dim, 0 );
        for ( std::size_t m = 0; m < dim; ++m )
            J.diagonal()[m] = ( double( n_atoms ) - 2.0 * double( m ) ) / 2.0;
        return J;
    }

    BandedHermitian J( dim, 1 );
    auto            b = J.band( 1 );
    for ( std::size_t m = 0; m < n_atoms; ++m )
    {
        const double s = ladder_element( n_atoms, m ) / 2.0;
        // band stores <m|J|m+1> = conj(<m+1|J|m>)
        b[m] = axis == Axis::x ? cplx( s, 0.0 ) : cplx( 0.0, -s );
    }
    return J;
}

/// Interaction Hamiltonian of `scheme` for N atoms (hbar = 1).
inline BandedHermitian hamiltonian( const CouplingScheme & scheme, std::size_t n_atoms )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "hamiltonian: N must be >= 1" );
    if ( !( scheme.rabi > 0.0 ) )
        throw std::invalid_argument( "hamiltonian: Omega_R must be > 0" );

    const double Om = scheme.rabi;
    switch ( scheme.kind )
    {
        case Scheme::MolmerSorensen:
            return ( Om / 4.0 ) * ( square( collective_op( n_atoms, Axis::x ) )
                                    - double( n_atoms ) * BandedHermitian::identity( n_atoms + 1 ) );
        case Scheme::OneAxisTwisting:
            return ( Om / 2.0 ) * square( collective_op( n_atoms, Axis::z ) );
        case Scheme::TwoAxisRaman:
            return ( Om / 2.0 ) * ( square( collective_op( n_atoms, Axis::x ) )
                                    - square( collective_op( n_atoms, Axis::y ) ) );
    }
    throw std::logic_error( "hamiltonian: bad scheme" );
}

struct ParityBlocks
{
    BandedHermitian even; // m = 0, 2, 4, ...
    BandedHermitian odd;  // m = 1, 3, 5, ...
};

/// Splits H into its even-m and odd-m sectors. Offset 2k of H becomes offset
/// k of a block. Throws if any odd offset band is nonzero.
inline ParityBlocks parity_blocks( const BandedHermitian & H )
{
    for ( std::size_t k = 1; k <= H.bandwidth(); k += 2 )
        if ( !H.band_is_zero( k ) )
            throw std::invalid_argument( "parity_blocks: operator couples even and odd m" );

    const std::size_t n      = H.dim();
    const std::size_t n_even = ( n + 1 ) / 2;
    const std::size_t n_odd  = n / 2;
    const std::size_t bw     = H.bandwidth() / 2;

    auto extract = [&]( std::size_t first, std::size_t size ) {
        // a 1x1 "odd" block exists only for N >= 1; size is never 0 for the even block
        BandedHermitian B( std::max< std::size_t >( size, 1 ), bw );
        for ( std::size_t b = 0; b < size; ++b )
            B.diagonal()[b] = H.diagonal()[first + 2 * b];
        for ( std::size_t k = 1; k <= B.bandwidth(); ++k )
            for ( std::size_t b = 0; b + k < size; ++b )
                B.band( k )[b] = H.band( 2 * k )[first + 2 * b];
        return B;
    };

    if ( n_odd == 0 )
        throw std::invalid_argument( "parity_blocks: dimension 1 has no odd sector" );
    return { extract( 0, n_even ), extract( 1, n_odd ) };
}

/// Dense dump: one matrix row per line, each entry written as "re im".
inline void write_dense( std::ostream & os, const BandedHermitian & H )
{
    const auto old = os.precision( 17 );
    for ( std::size_t i = 0; i < H.dim(); ++i )
    {
        for ( std::size_t j = 0; j < H.dim(); ++j )
        {
            const cplx z = H( i, j );
            if ( j > 0 )
                os << ' ';
            os << z.real() + 0.0 << ' ' << z.imag() + 0.0; // + 0.0 drops the sign of zero
        }
        os << '\n';
    }
    os.precision( old );
}

} // namespace dicke

#endif // DICKE_SPINOPS_HPP
