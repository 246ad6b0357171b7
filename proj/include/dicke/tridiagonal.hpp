#ifndef DICKE_TRIDIAGONAL_HPP
#define DICKE_TRIDIAGONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"

namespace dicke
{

struct SymmetricEigen
{
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors; // columns
};

namespace detail
{

//
// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
// d: diagonal, e[i]: coupling between i and i+1 (e has n entries, last unused).
// z is multiplied from the right by the accumulated rotations; pass the
// identity for eigenvectors of T, or the Householder Q for those of A = Q T Q^T.
//
inline void implicit_ql( std::vector< double > & d, std::vector< double > & e, Eigen::MatrixXd & z,
                         int max_iterations = 60 )
{
    const long n = long( d.size() );
    if ( n <= 1 )
        return;
    e[std::size_t( n - 1 )] = 0.0;

    for ( long l = 0; l < n; ++l )
    {
        int  iter = 0;
        long m    = l;
        do
        {
            for ( m = l; m < n - 1; ++m )
            {
                const double dd = std::abs( d[m] ) + std::abs( d[m + 1] );
                if ( std::abs( e[m] ) + dd == dd )
                    break;
            }
            if ( m == l )
                break;

            if ( iter++ == max_iterations )
                throw NumericalError( "implicit_ql: no convergence for eigenvalue " + std::to_string( l ) + " after "
                                      + std::to_string( max_iterations ) + " iterations" );

            double g = ( d[l + 1] - d[l] ) / ( 2.0 * e[l] );
            double r = std::hypot( g, 1.0 );
            g        = d[m] - d[l] + e[l] / ( g + std::copysign( r, g ) );

            double s = 1.0, c = 1.0, p = 0.0;
            long   i = m - 1;
            for ( ; i >= l; --i )
            {
                double f = s * e[i];
                double b = c * e[i];
                r        = std::hypot( f, g );
                e[i + 1] = r;
                if ( r == 0.0 )
                {
                    // underflow: deflate and restart this l
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s        = f / r;
                c        = g / r;
                g        = d[i + 1] - p;
                r        = ( d[i] - g ) * s + 2.0 * c * b;
                p        = s * r;
                d[i + 1] = g + p;
                g        = c * r - b;

                auto zi  = z.col( i );
                auto zi1 = z.col( i + 1 );
                for ( Eigen::Index k = 0; k < z.rows(); ++k )
                {
                    const double t = zi1( k );
                    zi1( k )       = s * zi( k ) + c * t;
                    zi( k )        = c * zi( k ) - s * t;
                }
            }
            if ( r == 0.0 && i >= l )
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while ( m != l );
    }
}

inline SymmetricEigen sorted( std::vector< double > const & d, Eigen::MatrixXd const & z )
{
    std::vector< std::size_t > order( d.size() );
    std::iota( order.begin(), order.end(), std::size_t( 0 ) );
    std::stable_sort( order.begin(), order.end(), [&]( std::size_t a, std::size_t b ) { return d[a] < d[b]; } );

    SymmetricEigen out;
    out.eigenvalues.resize( Eigen::Index( d.size() ) );
    out.eigenvectors.resize( z.rows(), z.cols() );
    for ( std::size_t k = 0; k < order.size(); ++k )
    {
        out.eigenvalues( Eigen::Index( k ) )  = d[order[k]];
        out.eigenvectors.col( Eigen::Index( k ) ) = z.col( Eigen::Index( order[k] ) );
    }
    return out;
}

} // namespace detail

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `offdiag` (length n-1).
inline SymmetricEigen tridiagonal_eigen( std::vector< double > diag, std::vector< double > const & offdiag )
{
    const std::size_t n = diag.size();
    if ( n == 0 )
        return {};
    if ( offdiag.size() + 1 != n )
        throw std::invalid_argument( "tridiagonal_eigen: off-diagonal must have n-1 entries" );

    std::vector< double > e( n, 0.0 );
    std::copy( offdiag.begin(), offdiag.end(), e.begin() );
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity( Eigen::Index( n ), Eigen::Index( n ) );
    detail::implicit_ql( diag, e, z );
    return detail::sorted( diag, z );
}

/// Dense symmetric fallback: Householder reduction to tridiagonal form,
/// then implicit QL on the result.
inline SymmetricEigen symmetric_eigen( Eigen::MatrixXd A )
{
    const Eigen::Index n = A.rows();
    if ( A.cols() != n )
        throw std::invalid_argument( "symmetric_eigen: matrix must be square" );
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity( n, n );

    for ( Eigen::Index k = 0; k + 2 < n; ++k )
    {
        const Eigen::Index len  = n - k - 1;
        Eigen::VectorXd    v    = A.col( k ).tail( len );
        const double       xnrm = v.norm();
        if ( xnrm == 0.0 )
            continue;
        const double alpha = v( 0 ) > 0 ? -xnrm : xnrm;
        v( 0 ) -= alpha;
        const double vnrm = v.norm();
        if ( vnrm == 0.0 )
            continue;
        v /= vnrm;

        // A22 <- H A22 H with H = I - 2 v v^T
        auto            A22 = A.bottomRightCorner( len, len );
        Eigen::VectorXd p   = A22 * v;
        const double    K   = v.dot( p );
        Eigen::VectorXd q   = p - K * v;
        A22.noalias() -= 2.0 * ( v * q.transpose() + q * v.transpose() );

        A.col( k ).tail( len ).setZero();
        A.row( k ).tail( len ).setZero();
        A( k + 1, k ) = alpha;
        A( k, k + 1 ) = alpha;

        auto Qr = Q.rightCols( len );
        Qr.noalias() -= 2.0 * ( Qr * v ) * v.transpose();
    }

    std::vector< double > d( static_cast< std::size_t >( n ) ), e( static_cast< std::size_t >( n ), 0.0 );
    for ( Eigen::Index i = 0; i < n; ++i )
    {
        d[std::size_t( i )] = A( i, i );
        if ( i + 1 < n )
            e[std::size_t( i )] = A( i + 1, i );
    }
    detail::implicit_ql( d, e, Q );
    return detail::sorted( d, Q );
}

} // namespace dicke

#endif // DICKE_TRIDIAGONAL_HPP
