#ifndef DICKE_ORACLE_HPP
#define DICKE_ORACLE_HPP

//
// Brute-force reference: explicit 2^N tensor-product space, dense matrices,
// dense diagonalization. Shares nothing with the banded/parity main path
// beyond the basis conventions, and is meant for tests and small N only.
//
// Computational basis: bit i of the index set means atom i is down.
// Single-atom ordering is (|up>, |down>), so sigma_+ = |up><down|.
//

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "dicke/spinops.hpp"
#include "dicke/state.hpp"

namespace dicke::oracle
{

inline constexpr std::size_t kMaxAtoms = 12;

using Matrix2 = Eigen::Matrix2cd;

inline Matrix2 sigma_x() { Matrix2 m; m << 0, 1, 1, 0; return m; }
inline Matrix2 sigma_y() { Matrix2 m; m << 0, cplx( 0, -1 ), cplx( 0, 1 ), 0; return m; }
inline Matrix2 sigma_z() { Matrix2 m; m << 1, 0, 0, -1; return m; }
inline Matrix2 sigma_plus() { Matrix2 m; m << 0, 1, 0, 0; return m; }
inline Matrix2 sigma_minus() { Matrix2 m; m << 0, 0, 1, 0; return m; }

inline void check_size( std::size_t n_atoms )
{
    if ( n_atoms == 0 )
        throw std::invalid_argument( "oracle: N must be >= 1" );
    if ( n_atoms > kMaxAtoms )
        throw std::invalid_argument( "oracle: N exceeds the 2^N memory guard (12)" );
}

/// sum over terms of c * A (x) B acting on atoms i and j of an N-atom register.
struct PairTerm
{
    cplx    coeff;
    Matrix2 a;
    Matrix2 b;
};

inline void add_pair_operator( Eigen::MatrixXcd & H, std::size_t n_atoms, std::size_t i, std::size_t j,
                               std::span< const PairTerm > terms )
{
    const std::size_t dim = std::size_t( 1 ) << n_atoms;
    for ( std::size_t col = 0; col < dim; ++col )
    {
        const int bi = int( ( col >> i ) & 1u );
        const int bj = int( ( col >> j ) & 1u );
        for ( int oi = 0; oi < 2; ++oi )
            for ( int oj = 0; oj < 2; ++oj )
            {
                cplx amp = 0.0;
                for ( const auto & t : terms )
                    amp += t.coeff * t.a( oi, bi ) * t.b( oj, bj );
                if ( amp == cplx( 0.0 ) )
                    continue;
                std::size_t row = col;
                row = ( row & ~( std::size_t( 1 ) << i ) ) | ( std::size_t( oi ) << i );
                row = ( row & ~( std::size_t( 1 ) << j ) ) | ( std::size_t( oj ) << j );
                H( Eigen::Index( row ), Eigen::Index( col ) ) += amp;
            }
    }
}

inline Eigen::MatrixXcd pair_matrix( std::span< const PairTerm > terms )
{
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero( 4, 4 );
    add_pair_operator( H, 2, 0, 1, terms );
    return H;
}

/// (Omega/2)[ (|up><down|)_1 (|up><down|)_2 + (|down><up|)_1 (|down><up|)_2 ]
inline Eigen::MatrixXcd two_atom_projector_form( double omega_r )
{
    const PairTerm t[] = { { omega_r / 2, sigma_plus(), sigma_plus() }, { omega_r / 2, sigma_minus(), sigma_minus() } };
    return pair_matrix( t );
}

/// (Omega/2)(sigma_x (x) sigma_x - sigma_y (x) sigma_y)
inline Eigen::MatrixXcd two_atom_pauli_form( double omega_r )
{
    const PairTerm t[] = { { omega_r / 2, sigma_x(), sigma_x() }, { -omega_r / 2, sigma_y(), sigma_y() } };
    return pair_matrix( t );
}

/// The two-atom Raman coupling whose pair sum is (Omega/2)(J_x^2 - J_y^2):
/// only |up up> <-> |down down> is connected.
inline Eigen::MatrixXcd two_atom_coupling( double omega_r ) { return two_atom_projector_form( omega_r ); }

/// Sum over unordered pairs of the scheme's two-body term, normalized so that
/// the symmetric-sector restriction equals dicke::hamiltonian() with
/// spin-1/2 collective operators:
///   TwoAxisRaman:    (Omega/2)(s+ s+ + s- s-) per pair
///   MolmerSorensen:  (Omega/8) sx sx per pair, minus 3 N Omega / 16
///   OneAxisTwisting: (Omega/2) (sum_i sz_i / 2)^2, built on the diagonal
inline Eigen::MatrixXcd pairwise_hamiltonian( const CouplingScheme & scheme, std::size_t n_atoms )
{
    check_size( n_atoms );
    const std::size_t dim = std::size_t( 1 ) << n_atoms;
    const double      Om  = scheme.rabi;
    Eigen::MatrixXcd  H   = Eigen::MatrixXcd::Zero( Eigen::Index( dim ), Eigen::Index( dim ) );

    switch ( scheme.kind )
    {
        case Scheme::TwoAxisRaman:
        {
            const PairTerm t[] = { { Om / 2, sigma_plus(), sigma_plus() }, { Om / 2, sigma_minus(), sigma_minus() } };
            for ( std::size_t i = 0; i < n_atoms; ++i )
                for ( std::size_t j = i + 1; j < n_atoms; ++j )
                    add_pair_operator( H, n_atoms, i, j, t );
            break;
        }
        case Scheme::MolmerSorensen:
        {
            const PairTerm t[] = { { Om / 8, sigma_x(), sigma_x() } };
            for ( std::size_t i = 0; i < n_atoms; ++i )
                for ( std::size_t j = i + 1; j < n_atoms; ++j )
                    add_pair_operator( H, n_atoms, i, j, t );
            H.diagonal().array() -= 3.0 * double( n_atoms ) * Om / 16.0;
            break;
        }
        case Scheme::OneAxisTwisting:
        {
            for ( std::size_t b = 0; b < dim; ++b )
            {
                double sz = 0.0;
                for ( std::size_t i = 0; i < n_atoms; ++i )
                    sz += ( ( b >> i ) & 1u ) ? -1.0 : 1.0;
                const double jz = sz / 2.0;
                H( Eigen::Index( b ), Eigen::Index( b ) ) = Om / 2.0 * jz * jz;
            }
            break;
        }
    }
    return H;
}

/// Operator that relabels atoms: atom i of the input becomes atom perm[i].
inline Eigen::MatrixXd permutation_operator( std::span< const std::size_t > perm )
{
    const std::size_t n = perm.size();
    check_size( n );
    const std::size_t dim = std::size_t( 1 ) << n;
    Eigen::MatrixXd   P   = Eigen::MatrixXd::Zero( Eigen::Index( dim ), Eigen::Index( dim ) );
    for ( std::size_t b = 0; b < dim; ++b )
    {
        std::size_t out = 0;
        for ( std::size_t i = 0; i < n; ++i )
            if ( ( b >> i ) & 1u )
                out |= std::size_t( 1 ) << perm[i];
        P( Eigen::Index( out ), Eigen::Index( b ) ) = 1.0;
    }
    return P;
}

struct FullState
{
    std::size_t      n_atoms = 0;
    Eigen::VectorXcd amplitudes;
};

inline double binomial( std::size_t n, std::size_t k )
{
    return std::round( std::exp( std::lgamma( double( n ) + 1 ) - std::lgamma( double( k ) + 1 ) - std::lgamma( double( n - k ) + 1 ) ) );
}

/// |m>_Dicke -> C(N,m)^{-1/2} sum of all bitstrings with m atoms down.
inline FullState symmetric_embed( const DickeState & s )
{
    const std::size_t N = s.n_atoms();
    check_size( N );
    const std::size_t dim = std::size_t( 1 ) << N;
    FullState         f{ N, Eigen::VectorXcd::Zero( Eigen::Index( dim ) ) };
    for ( std::size_t b = 0; b < dim; ++b )
    {
        const auto m = std::size_t( std::popcount( b ) );
        f.amplitudes( Eigen::Index( b ) ) = s[m] / std::sqrt( binomial( N, m ) );
    }
    return f;
}

/// Projection onto the symmetric sector, returned as raw Dicke amplitudes
/// (not renormalized, so leakage out of the sector shows up as lost norm).
inline std::vector< cplx > symmetric_project( const FullState & f )
{
    const std::size_t   N = f.n_atoms;
    std::vector< cplx > c( N + 1, 0.0 );
    for ( Eigen::Index b = 0; b < f.amplitudes.size(); ++b )
        c[std::size_t( std::popcount( std::size_t( b ) ) )] += f.amplitudes( b );
    for ( std::size_t m = 0; m <= N; ++m )
        c[m] /= std::sqrt( binomial( N, m ) );
    return c;
}

/// exp(-i H t) psi via a full dense eigendecomposition of H.
inline FullState evolve_full( const Eigen::MatrixXcd & H, const FullState & psi, double t )
{
    Eigen::SelfAdjointEigenSolver< Eigen::MatrixXcd > es( H );
    if ( es.info() != Eigen::Success )
        throw std::runtime_error( "oracle: dense eigensolver failed" );
    const Eigen::VectorXcd a     = es.eigenvectors().adjoint() * psi.amplitudes;
    Eigen::VectorXcd       phase = ( es.eigenvalues().cast< cplx >() * cplx( 0, -t ) ).array().exp().matrix();
    return { psi.n_atoms, es.eigenvectors() * ( phase.asDiagonal() * a ) };
}

inline nlohmann::json to_json( const FullState & f )
{
    nlohmann::json amps = nlohmann::json::array();
    for ( Eigen::Index i = 0; i < f.amplitudes.size(); ++i )
        amps.push_back( { f.amplitudes( i ).real(), f.amplitudes( i ).imag() } );
    return { { "n_atoms", f.n_atoms }, { "amplitudes", amps } };
}

} // namespace dicke::oracle

#endif // DICKE_ORACLE_HPP
