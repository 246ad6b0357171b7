// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run everything
//   acceptance --only 7   run one criterion (exit status reflects it)
//
// Diagnostics go to the indented lines below each verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <sys/wait.h>

#include <CLI11.hpp>

#include "dicke/dicke.hpp"
#include "dicke/oracle.hpp"

namespace
{

using namespace dicke;
using Clock = std::chrono::steady_clock;

constexpr Scheme kSchemes[] = { Scheme::MolmerSorensen, Scheme::OneAxisTwisting, Scheme::TwoAxisRaman };

const std::vector< std::size_t > kSweep = { 128, 256, 512, 1024, 2048 };

template < typename T >
T clean( T x )
{
    if constexpr ( std::is_floating_point_v< T > )
        return x + T( 0 ); // no "-0"
    else
        return x;
}

struct Verdict
{
    bool                       pass = false;
    std::vector< std::string > notes;

    template < typename... Args >
    void note( Args &&... args )
    {
        std::ostringstream os;
        os.precision( 6 );
        ( os << ... << clean( args ) );
        notes.push_back( os.str() );
    }
};

double seconds_since( Clock::time_point t0 ) { return std::chrono::duration< double >( Clock::now() - t0 ).count(); }

std::vector< double > linspace( double a, double b, std::size_t n )
{
    std::vector< double > g( n );
    for ( std::size_t k = 0; k < n; ++k )
        g[k] = a + ( b - a ) * double( k ) / double( n - 1 );
    return g;
}

//
// 1
//
Verdict oracle_equivalence()
{
    Verdict    v;
    const auto t0    = Clock::now();
    double     worst = 1.0;
    for ( auto s : kSchemes )
        for ( std::size_t N : { 2u, 4u, 6u, 8u } )
        {
            const CouplingScheme sc{ s, 1.0 };
            const auto           spec = diagonalize( hamiltonian( sc, N ) );
            const auto           Hf   = oracle::pairwise_hamiltonian( sc, N );
            for ( const auto & psi : { all_up_state( N ), coherent_spin_state( N, 0.7, 0.3 ) } )
                for ( double t : { 0.1, 1.0, std::numbers::pi } )
                {
                    const auto full = oracle::evolve_full( Hf, oracle::symmetric_embed( psi ), t );
                    const auto mine = oracle::symmetric_embed( evolve( psi, spec, t ) );
                    worst           = std::min( worst, std::norm( mine.amplitudes.dot( full.amplitudes ) ) );
                }
        }
    const double dt = seconds_since( t0 );
    v.pass          = worst >= 1.0 - 1e-9 && dt < 30.0;
    v.note( "worst overlap 1 - ", 1.0 - worst, " over 3 schemes x N in {2,4,6,8} x t in {0.1, 1, pi} x 2 starts; ", dt, " s" );
    return v;
}

//
// 2
//
Verdict two_atom_identity()
{
    Verdict    v;
    const auto proj  = oracle::two_atom_projector_form( 1.0 );
    const auto pauli = oracle::two_atom_pauli_form( 1.0 );
    v.pass           = proj == pauli;
    v.note( "max |(Om/2)(s+s+ + s-s-) - (Om/2)(sxsx - sysy)| = ", ( proj - pauli ).cwiseAbs().maxCoeff() );
    v.note( "max |2 (s+s+ + s-s-) - (sxsx - sysy)| = ", ( 2.0 * proj - pauli ).cwiseAbs().maxCoeff(),
            " (the two printed forms differ by a factor of 2)" );
    return v;
}

//
// 3
//
Verdict ghz_generation()
{
    Verdict                    v;
    v.pass = true;
    const CouplingScheme ms{ Scheme::MolmerSorensen, 1.0 };
    std::vector< double > grid( 10000 );
    for ( std::size_t k = 0; k < grid.size(); ++k )
        grid[k] = double( k ) * 8.0 * std::numbers::pi / 1e4;

    for ( std::size_t N : { 10u, 100u, 1000u } )
    {
        const auto t0   = Clock::now();
        const auto spec = diagonalize( hamiltonian( ms, N ) );
        double     best = 0, t_best = 0, t_first = -1;
        for_each_time( all_up_state( N ), spec, grid, [&]( double t, const DickeState & s ) {
            const double f = ghz_fidelity( s ).fidelity;
            if ( f > best )
            {
                best   = f;
                t_best = t;
            }
            if ( t_first < 0 && f >= 0.999 )
                t_first = t;
        } );
        const double dt = seconds_since( t0 );
        const bool   ok = best >= 0.999 && ( N < 1000 || dt < 120.0 );
        v.pass          = v.pass && ok;
        v.note( "N=", N, ": max fidelity ", best, " at t = ", t_best, " (= ", t_best / std::numbers::pi, " pi); first t with F >= 0.999: ",
                t_first, "; ", dt, " s" );
    }
    return v;
}

//
// 4
//
Verdict fig2b_reproduction()
{
    Verdict    v;
    const auto grid = linspace( 0.0, 0.5, 5001 );
    const auto spec = diagonalize( hamiltonian( { Scheme::TwoAxisRaman, 1.0 }, 1000 ) );

    double best = -1, t_best = 0, p0_best = 0, pN_best = 0;
    double late = -1, t_late = 0, p0_late = 0, pN_late = 0, ghz_late = 0;
    for_each_time( all_up_state( 1000 ), spec, grid, [&]( double t, const DickeState & s ) {
        const auto [p0, pN] = edge_populations( s );
        if ( p0 + pN > best )
        {
            best = p0 + pN, t_best = t, p0_best = p0, pN_best = pN;
        }
        if ( t >= 0.1 && p0 + pN > late )
        {
            late = p0 + pN, t_late = t, p0_late = p0, pN_late = pN, ghz_late = ghz_fidelity( s ).fidelity;
        }
    } );

    v.pass = best >= 0.4 && best <= 0.6 && t_best >= 0.23 && t_best <= 0.33 && std::abs( p0_best - pN_best ) <= 0.05;
    v.note( "max over [0, 0.5] of p0 + pN = ", best, " at t = ", t_best, " (p0 = ", p0_best, ", pN = ", pN_best, ")" );
    v.note( "largest revival after t = 0.1: p0 + pN = ", late, " at t = ", t_late, " (p0 = ", p0_late, ", pN = ", pN_late,
            "), GHZ fidelity ", ghz_late );
    return v;
}

//
// 5, 6, 8
//
ScalingReport sweep( Scheme s )
{
    return scaling_study( { s, 1.0 }, kSweep );
}

void note_points( Verdict & v, const ScalingReport & rep )
{
    for ( const auto & p : rep.points )
        v.note( "N=", p.n_atoms, ": min var ", p.min_variance, " at t = ", p.t_min_variance, "; min xi^2 ", p.min_xi2, " at t = ",
                p.t_min_xi2 );
}

Verdict one_axis_scaling()
{
    Verdict      v;
    const auto   t0  = Clock::now();
    const auto   rep = sweep( Scheme::OneAxisTwisting );
    const double dt  = seconds_since( t0 );
    note_points( v, rep );
    v.pass = std::abs( rep.variance_fit.exponent - 1.0 / 3.0 ) <= 0.1 && dt < 300.0;
    v.note( "slope ", rep.variance_fit.exponent, " +- ", rep.variance_fit.exponent_stderr, " (target 0.333 +- 0.1); ", dt, " s" );
    return v;
}

Verdict two_axis_floor()
{
    Verdict      v;
    const auto   t0  = Clock::now();
    const auto   rep = sweep( Scheme::TwoAxisRaman );
    const double dt  = seconds_since( t0 );
    note_points( v, rep );
    bool in_band = true;
    for ( const auto & p : rep.points )
        in_band = in_band && p.min_variance >= 0.3 && p.min_variance <= 0.8;
    v.pass = in_band && std::abs( rep.variance_fit.exponent ) < 0.05 && dt < 900.0;
    v.note( "slope ", rep.variance_fit.exponent, " +- ", rep.variance_fit.exponent_stderr, "; all minima in [0.3, 0.8]: ",
            in_band ? "yes" : "no", "; ", dt, " s" );
    return v;
}

Verdict squeezing_timescale()
{
    Verdict    v;
    const auto rep = sweep( Scheme::TwoAxisRaman );
    note_points( v, rep );
    const double e = rep.t_min_xi2_fit.exponent;
    v.pass         = e >= -1.15 && e <= -0.85;
    v.note( "t(min xi^2) ~ N^", e, " +- ", rep.t_min_xi2_fit.exponent_stderr, " (target -1 +- 0.15)" );

    std::vector< double > ns, scaled;
    for ( const auto & p : rep.points )
    {
        ns.push_back( double( p.n_atoms ) );
        scaled.push_back( p.t_min_xi2 * double( p.n_atoms ) / std::log( double( p.n_atoms ) ) );
    }
    v.note( "t(min xi^2) * N / ln N ~ N^", loglog_fit( ns, scaled ).exponent, " (log-corrected timescale)" );
    return v;
}

//
// 7
//
Verdict squeezing_direction()
{
    Verdict           v;
    const std::size_t N = 500;
    ScalingOptions    opt;
    opt.initial        = InitialCondition::all_up();
    const auto p       = scaling_point( { Scheme::TwoAxisRaman, 1.0 }, N, opt );
    const Eigen::Vector3d diag( 1 / std::sqrt( 2.0 ), 1 / std::sqrt( 2.0 ), 0 );
    const double          c     = std::min( 1.0, std::abs( p.n1_at_min_xi2.dot( diag ) ) );
    const double          angle = std::acos( c ) * 180.0 / std::numbers::pi;
    v.pass                      = angle <= 3.0;
    v.note( "start c_0 = 1, min xi^2 = ", p.min_xi2, " at t = ", p.t_min_xi2, "; n1 = (", p.n1_at_min_xi2.x(), ", ", p.n1_at_min_xi2.y(),
            ", ", p.n1_at_min_xi2.z(), "), ", angle, " deg from +-(x+y)/sqrt2" );

    opt.initial          = InitialCondition::all_down();
    const auto       q   = scaling_point( { Scheme::TwoAxisRaman, 1.0 }, N, opt );
    const Eigen::Vector3d anti( 1 / std::sqrt( 2.0 ), -1 / std::sqrt( 2.0 ), 0 );
    v.note( "start c_N = 1 (mirror): n1 is ", std::acos( std::min( 1.0, std::abs( q.n1_at_min_xi2.dot( anti ) ) ) ) * 180.0 / std::numbers::pi,
            " deg from +-(x-y)/sqrt2" );
    return v;
}

//
// 9
//
Verdict property_suite()
{
    Verdict v;
    v.pass = true;
    auto check = [&]( bool ok, const std::string & what ) {
        v.pass = v.pass && ok;
        v.note( ok ? "ok   " : "FAIL ", what );
    };

    // norm, parity, time reversal
    double norm_err = 0, leak = 0, rev = 1;
    for ( auto s : kSchemes )
    {
        const std::size_t N    = 200;
        const auto        spec = diagonalize( hamiltonian( { s, 1.0 }, N ) );
        for_each_time( all_up_state( N ), spec, linspace( 0, 5, 501 ), [&]( double t, const DickeState & st ) {
            norm_err = std::max( norm_err, std::abs( st.norm() - 1.0 ) );
            for ( std::size_t m = 1; m <= N; m += 2 )
                leak = std::max( leak, std::abs( st[m] ) );
            if ( std::fmod( t, 1.0 ) < 1e-9 )
                rev = std::min( rev, state_fidelity( evolve( st, spec, -t ), all_up_state( N ) ) );
        } );
        const auto psi = coherent_spin_state( N, 1.0, 0.5 );
        for ( double t : { 0.3, 2.0 } )
            rev = std::min( rev, state_fidelity( evolve( evolve( psi, spec, t ), spec, -t ), psi ) );
    }
    check( norm_err < 1e-10, "norm drift " + format_double( norm_err ) );
    check( leak < 1e-12, "odd-m leakage " + format_double( leak ) );
    check( rev >= 1 - 1e-9, "time-reversal overlap 1 - " + format_double( 1 - rev ) );

    // angular-momentum algebra
    double comm = 0, cas = 0;
    const cplx I( 0, 1 );
    for ( std::size_t N = 1; N <= 8; ++N )
    {
        const auto x = collective_op( N, Axis::x ).to_dense(), y = collective_op( N, Axis::y ).to_dense(),
                   z = collective_op( N, Axis::z ).to_dense();
        comm = std::max( { comm, ( x * y - y * x - I * z ).cwiseAbs().maxCoeff(), ( y * z - z * y - I * x ).cwiseAbs().maxCoeff(),
                           ( z * x - x * z - I * y ).cwiseAbs().maxCoeff() } );
        const double j = double( N ) / 2;
        const auto   C = ( x * x + y * y + z * z ).eval();
        cas = std::max( cas, ( C - j * ( j + 1 ) * Eigen::MatrixXcd::Identity( C.rows(), C.cols() ) ).cwiseAbs().maxCoeff() );
    }
    check( comm < 1e-12, "commutator residual " + format_double( comm ) );
    check( cas < 1e-12, "Casimir residual " + format_double( cas ) );

    // coherent states at the standard quantum limit
    std::mt19937_64                          rng( 20241016 );
    std::uniform_real_distribution< double > th( 0.05, std::numbers::pi - 0.05 ), ph( -std::numbers::pi, std::numbers::pi );
    double                                   xi = 0;
    for ( int i = 0; i < 20; ++i )
    {
        const auto r = squeezing( coherent_spin_state( 100, th( rng ), ph( rng ) ) );
        xi           = std::max( xi, r.xi_squared ? std::abs( *r.xi_squared - 1.0 ) : 1.0 );
    }
    check( xi < 1e-8, "coherent-state |xi^2 - 1| " + format_double( xi ) );

    // diagonal fast path
    const CouplingScheme oat{ Scheme::OneAxisTwisting, 1.0 };
    const auto           spec = diagonalize( hamiltonian( oat, 300 ) );
    const auto           psi  = coherent_spin_state( 300, std::numbers::pi / 2, 0 );
    double               diff = 0;
    for ( double t : { 0.01, 0.1, 1.0 } )
    {
        const auto a = evolve_diagonal( psi, oat, t ), b = evolve( psi, spec, t );
        for ( std::size_t m = 0; m <= 300; ++m )
            diff = std::max( diff, std::abs( a[m] - b[m] ) );
    }
    check( diff < 1e-12, "one-axis fast path vs spectral " + format_double( diff ) );
    return v;
}

//
// 10
//
Verdict raman_calculator()
{
    Verdict            v;
    raman::RamanParams p;
    p.omega1 = p.omega2 = 1e8;
    p.delta_m           = 1e9;
    p.delta_a           = 1e12;
    p.eta               = 0.1;
    p.gamma_m           = 6e7;
    p.omega_gg          = 1.1e10;
    p.k                 = raman::wavenumber( 589e-9 );
    p.mass              = 3.817e-26;

    const auto b = raman::bragg_resonances( p, true );
    const auto r = raman::raman_resonances( p );
    const bool structural = b.molecular / b.atomic == 0.5 && r.molecular / r.atomic == 2.0;

    // independent route: recoil of a two-photon kick, 2 h / (M lambda^2)
    const double h          = 6.62607015e-34;
    const double recoil_hz  = 2 * h / ( p.mass * 589e-9 * 589e-9 );
    const double atomic_hz  = raman::to_hz( b.atomic ), molecular_hz = raman::to_hz( b.molecular );
    const bool   agree      = std::abs( atomic_hz / recoil_hz - 1 ) < 1e-9 && std::abs( molecular_hz / ( recoil_hz / 2 ) - 1 ) < 1e-9;
    const bool   near_target = std::abs( atomic_hz / 100e3 - 1 ) <= 0.05 && std::abs( molecular_hz / 50e3 - 1 ) <= 0.05;

    v.pass = structural && agree && near_target;
    v.note( "Bragg molecular/atomic = ", b.molecular / b.atomic, ", Raman molecular/atomic = ", r.molecular / r.atomic );
    v.note( "sodium 589 nm: atomic ", atomic_hz, " Hz, molecular ", molecular_hz, " Hz; independent 2h/(M lambda^2) = ", recoil_hz, " Hz" );
    return v;
}

//
// 11
//
std::string slurp( const std::filesystem::path & p )
{
    std::ifstream     in( p, std::ios::binary );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism()
{
    Verdict    v;
    const auto dir = std::filesystem::temp_directory_path() / "dicke_acceptance";
    std::filesystem::create_directories( dir );
    std::string csv[2];
    int         rc[2];
    for ( int i = 0; i < 2; ++i )
    {
        const auto out = dir / ( "fig2b_" + std::to_string( i ) + ".csv" );
        std::filesystem::remove( out );
        const std::string cmd = std::string( DICKESIM_PATH ) + " run --config " + FIG2B_CONFIG + " --out " + out.string() + " >/dev/null 2>&1";
        const int         st  = std::system( cmd.c_str() );
        rc[i]                 = WIFEXITED( st ) ? WEXITSTATUS( st ) : -1;
        csv[i]                = slurp( out );
    }
    v.pass = rc[0] == 0 && rc[1] == 0 && !csv[0].empty() && csv[0] == csv[1];
    v.note( "exit codes ", rc[0], ", ", rc[1], "; CSV sizes ", csv[0].size(), " and ", csv[1].size(), " bytes; identical: ",
            csv[0] == csv[1] ? "yes" : "no" );
    return v;
}

struct Criterion
{
    int                         id;
    const char *                title;
    std::function< Verdict() > run;
};

} // namespace

int main( int argc, char ** argv )
{
    CLI::App app{ "acceptance checks" };
    int      only = 0;
    app.add_option( "--only", only, "run a single criterion (1-11)" )->check( CLI::Range( 1, 11 ) );
    CLI11_PARSE( app, argc, argv );

    const std::vector< Criterion > all = {
        { 1, "Dicke-basis evolution matches the 2^N oracle", oracle_equivalence },
        { 2, "two printed forms of the two-atom coupling are equal", two_atom_identity },
        { 3, "Molmer-Sorensen coupling reaches GHZ fidelity >= 0.999", ghz_generation },
        { 4, "two-axis edge populations peak at ~50% near t = 0.28", fig2b_reproduction },
        { 5, "one-axis min variance grows as N^(1/3)", one_axis_scaling },
        { 6, "two-axis min variance stays near 1/2", two_axis_floor },
        { 7, "two-axis squeezing axis is (x+y)/sqrt2", squeezing_direction },
        { 8, "two-axis squeezing time scales as 1/N", squeezing_timescale },
        { 9, "norm, parity, algebra, coherent-state and fast-path properties", property_suite },
        { 10, "Raman/Bragg resonance ratios and sodium recoil numbers", raman_calculator },
        { 11, "fig2b config gives byte-identical CSV on repeat", determinism },
    };

    int failed = 0;
    for ( const auto & c : all )
    {
        if ( only != 0 && c.id != only )
            continue;
        Verdict v;
        try
        {
            v = c.run();
        }
        catch ( const std::exception & e )
        {
            v.pass = false;
            v.note( "exception: ", e.what() );
        }
        std::cout << ( v.pass ? "[PASS] " : "[FAIL] " ) << "criterion " << c.id << ": " << c.title << '\n';
        for ( const auto & n : v.notes )
            std::cout << "         " << n << '\n';
        std::cout.flush();
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
