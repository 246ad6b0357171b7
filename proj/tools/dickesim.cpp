// dickesim: batch front-end for collective-spin simulations.
//
//   dickesim run      --config configs/fig2b.toml --out fig2b.csv
//   dickesim scaling  --scheme one-axis --n-list 128,256,512,1024,2048 --out oat.json
//   dickesim raman    --config configs/sodium.toml
//   dickesim operator --scheme two-axis-raman --n-atoms 4 --which H
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dicke/dicke.hpp"

namespace
{

using nlohmann::json;

constexpr int kExitOk        = 0;
constexpr int kExitConfig    = 1;
constexpr int kExitNumerical = 2;

struct ConfigError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

dicke::InitialCondition parse_initial( const std::string & s )
{
    if ( s == "all_up" || s == "all-up" )
        return dicke::InitialCondition::all_up();
    if ( s == "all_down" || s == "all-down" )
        return dicke::InitialCondition::all_down();
    if ( s.rfind( "coherent", 0 ) == 0 )
    {
        double theta = 0, phi = 0;
        auto   pos = s.find( ':' );
        if ( pos == std::string::npos )
            throw ConfigError( "initial: expected coherent:THETA,PHI" );
        std::string rest = s.substr( pos + 1 );
        std::replace( rest.begin(), rest.end(), ',', ' ' );
        std::istringstream is( rest );
        if ( !( is >> theta >> phi ) )
            throw ConfigError( "initial: expected coherent:THETA,PHI" );
        return dicke::InitialCondition::coherent( theta, phi );
    }
    throw ConfigError( "initial: unknown value '" + s + "' (all_up, all_down, coherent:THETA,PHI)" );
}

std::string json_number_or_null( std::optional< double > v ) { return v ? dicke::format_double( *v ) : "null"; }

//
// run
//
struct RunOptions
{
    std::string                scheme   = "two-axis-raman";
    double                     rabi     = 1.0;
    std::size_t                n_atoms  = 0;
    std::string                initial  = "all_up";
    double                     t_max    = 0.0;
    std::size_t                n_points = 2;
    std::vector< std::string > outputs  = { "edge_populations", "ghz_fidelity", "squeezing" };
    std::uint64_t              seed     = 1;
    std::string                out;
    std::string                summary;
};

std::vector< double > run_grid( const RunOptions & o )
{
    if ( o.t_max == 0.0 )
        return { 0.0 };
    std::vector< double > g( o.n_points );
    for ( std::size_t k = 0; k < o.n_points; ++k )
        g[k] = o.t_max * double( k ) / double( o.n_points - 1 );
    return g;
}

int do_run( const RunOptions & o )
{
    const auto start = std::chrono::steady_clock::now();

    dicke::CouplingScheme scheme{ dicke::scheme_from_string( o.scheme ), o.rabi };
    if ( !( o.rabi > 0 ) )
        throw ConfigError( "rabi must be > 0" );
    if ( o.n_atoms < 1 )
        throw ConfigError( "n-atoms must be >= 1" );
    if ( !( o.t_max >= 0 ) )
        throw ConfigError( "t-max must be >= 0" );
    if ( o.t_max > 0 && o.n_points < 2 )
        throw ConfigError( "n-points must be >= 2" );
    if ( o.out.empty() )
        throw ConfigError( "--out is required" );

    const std::set< std::string > want( o.outputs.begin(), o.outputs.end() );
    for ( const auto & w : want )
        if ( w != "edge_populations" && w != "ghz_fidelity" && w != "squeezing" && w != "moments" )
            throw ConfigError( "unknown output '" + w + "'" );
    const bool edges = want.count( "edge_populations" ) > 0;
    const bool ghz   = want.count( "ghz_fidelity" ) > 0;
    const bool sq    = want.count( "squeezing" ) > 0;
    const bool mom   = want.count( "moments" ) > 0;

    if ( ghz && o.n_atoms % 2 != 0 )
        throw ConfigError( "ghz_fidelity requires an even number of atoms" );

    const auto grid    = run_grid( o );
    const auto initial = parse_initial( o.initial ).make( o.n_atoms );
    if ( sq )
        dicke::check_squeezing_grid( grid, o.n_atoms, o.rabi ); // GridResolutionError -> config error

    std::ofstream csv( o.out, std::ios::binary );
    if ( !csv )
        throw ConfigError( "cannot open output '" + o.out + "'" );

    csv << "t";
    if ( edges )
        csv << ",p0,pN";
    if ( ghz )
        csv << ",ghz_fidelity";
    if ( sq )
        csv << ",xi_squared,n1_x,n1_y,n1_z,degenerate_flag";
    if ( mom )
        csv << ",mean_x,mean_y,mean_z,var_x,var_y,var_z";
    csv << '\n';

    std::mt19937_64 rng( o.seed );
    auto            f = []( double x ) { return dicke::format_double( x ); };

    std::optional< double > best_ghz, t_best_ghz, best_xi, t_best_xi, best_edge, t_best_edge;

    dicke::scan_states( scheme, initial, grid, [&]( double t, const dicke::DickeState & s ) {
        csv << f( t );
        if ( edges )
        {
            const auto [p0, pN] = dicke::edge_populations( s );
            csv << ',' << f( p0 ) << ',' << f( pN );
            if ( !best_edge || p0 + pN > *best_edge )
            {
                best_edge   = p0 + pN;
                t_best_edge = t;
            }
        }
        if ( ghz )
        {
            const auto g = dicke::ghz_fidelity( s );
            csv << ',' << f( g.fidelity );
            if ( !best_ghz || g.fidelity > *best_ghz )
            {
                best_ghz   = g.fidelity;
                t_best_ghz = t;
            }
        }
        std::optional< dicke::SpinMoments > moments;
        if ( sq || mom )
            moments = dicke::spin_moments( s );
        if ( sq )
        {
            const auto r = dicke::squeezing( *moments, o.n_atoms );
            if ( !dicke::squeezing_direction_is_optimal( *moments, r, rng ) )
                throw dicke::NumericalError( "squeezing direction failed the random-direction optimality check at t = "
                                             + f( t ) );
            csv << ',' << f( r.xi_squared.value_or( std::numeric_limits< double >::quiet_NaN() ) ) << ','
                << f( r.direction_n1.x() ) << ',' << f( r.direction_n1.y() ) << ',' << f( r.direction_n1.z() ) << ','
                << ( r.degenerate ? 1 : 0 );
            if ( r.xi_squared && ( !best_xi || *r.xi_squared < *best_xi ) )
            {
                best_xi   = r.xi_squared;
                t_best_xi = t;
            }
        }
        if ( mom )
        {
            const auto & m = *moments;
            csv << ',' << f( m.mean.x() ) << ',' << f( m.mean.y() ) << ',' << f( m.mean.z() ) << ','
                << f( m.covariance( 0, 0 ) ) << ',' << f( m.covariance( 1, 1 ) ) << ',' << f( m.covariance( 2, 2 ) );
        }
        csv << '\n';
    } );
    csv.close();
    if ( !csv )
        throw ConfigError( "failed writing '" + o.out + "'" );

    const double runtime = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();

    std::string summary_path = o.summary;
    if ( summary_path.empty() )
        summary_path = std::filesystem::path( o.out ).replace_extension( ".summary.json" ).string();

    std::ofstream js( summary_path );
    js << "{\n"
       << "  \"scheme\": \"" << dicke::to_string( scheme.kind ) << "\",\n"
       << "  \"n_atoms\": " << o.n_atoms << ",\n"
       << "  \"initial\": \"" << o.initial << "\",\n"
       << "  \"grid_points\": " << grid.size() << ",\n"
       << "  \"t_of_max_ghz_fidelity\": " << json_number_or_null( t_best_ghz ) << ",\n"
       << "  \"max_ghz_fidelity\": " << json_number_or_null( best_ghz ) << ",\n"
       << "  \"t_of_max_edge_population_sum\": " << json_number_or_null( t_best_edge ) << ",\n"
       << "  \"max_edge_population_sum\": " << json_number_or_null( best_edge ) << ",\n"
       << "  \"t_of_min_xi2\": " << json_number_or_null( t_best_xi ) << ",\n"
       << "  \"min_xi2\": " << json_number_or_null( best_xi ) << ",\n"
       << "  \"runtime\": " << dicke::format_double( runtime ) << "\n"
       << "}\n";
    return kExitOk;
}

//
// scaling
//
struct ScalingCliOptions
{
    std::string                scheme = "two-axis-raman";
    double                     rabi   = 1.0;
    std::vector< std::size_t > n_list = { 128, 256, 512, 1024, 2048 };
    double                     window = 3.0;
    double                     spacing = 0.05;
    std::string                initial;
    std::string                out;
};

json fit_json( const dicke::PowerLawFit & f )
{
    return { { "exponent", f.exponent }, { "stderr", f.exponent_stderr }, { "prefactor", f.prefactor } };
}

int do_scaling( const ScalingCliOptions & o )
{
    const auto           start = std::chrono::steady_clock::now();
    dicke::ScalingOptions opt;
    opt.window_factor  = o.window;
    opt.spacing_factor = o.spacing;
    if ( !( o.window > 0 ) || !( o.spacing > 0 ) || o.spacing > 0.1 )
        throw ConfigError( "window must be > 0 and spacing in (0, 0.1]" );
    if ( !o.initial.empty() )
        opt.initial = parse_initial( o.initial );

    dicke::CouplingScheme scheme{ dicke::scheme_from_string( o.scheme ), o.rabi };
    const auto            rep = dicke::scaling_study( scheme, o.n_list, opt );

    json pts = json::array();
    for ( const auto & p : rep.points )
        pts.push_back( { { "n_atoms", p.n_atoms },
                         { "min_variance", p.min_variance },
                         { "t_min_variance", p.t_min_variance },
                         { "min_xi2", p.min_xi2 },
                         { "t_min_xi2", p.t_min_xi2 },
                         { "variance_at_min_xi2", p.variance_at_min_xi2 },
                         { "n1_at_min_xi2", { p.n1_at_min_xi2.x(), p.n1_at_min_xi2.y(), p.n1_at_min_xi2.z() } },
                         { "grid_points", p.grid_points } } );

    json report = { { "scheme", std::string( dicke::to_string( scheme.kind ) ) },
                    { "rabi", scheme.rabi },
                    { "initial", rep.initial.to_string() },
                    { "window_factor", o.window },
                    { "spacing_factor", o.spacing },
                    { "points", pts },
                    { "fits",
                      { { "min_variance_vs_n", fit_json( rep.variance_fit ) },
                        { "t_min_xi2_vs_n", fit_json( rep.t_min_xi2_fit ) },
                        { "t_min_variance_vs_n", fit_json( rep.t_min_variance_fit ) } } },
                    { "runtime", std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count() } };

    if ( o.out.empty() )
        std::cout << report.dump( 2 ) << '\n';
    else
    {
        std::ofstream os( o.out );
        if ( !os )
            throw ConfigError( "cannot open output '" + o.out + "'" );
        os << report.dump( 2 ) << '\n';
    }
    return kExitOk;
}

//
// raman
//
struct RamanCliOptions
{
    dicke::raman::RamanParams p;
    double                    wavelength = 0.0; // alternative to k
    bool                      counterpropagating = false;
    std::string               out;
};

int do_raman( RamanCliOptions o )
{
    using namespace dicke::raman;
    if ( o.wavelength > 0 )
        o.p.k = wavenumber( o.wavelength );

    const auto rabi   = effective_rabi( o.p );
    const auto bragg  = bragg_resonances( o.p, true );
    const auto raman  = raman_resonances( o.p );
    const auto chosen = o.counterpropagating ? bragg : raman;

    json report = {
        { "inputs",
          { { "omega1", o.p.omega1 },
            { "omega2", o.p.omega2 },
            { "delta_m", o.p.delta_m },
            { "delta_a", o.p.delta_a },
            { "eta", o.p.eta },
            { "gamma_m", o.p.gamma_m },
            { "omega_gg", o.p.omega_gg },
            { "k", o.p.k },
            { "mass", o.p.mass },
            { "counterpropagating", o.counterpropagating } } },
        { "effective_rabi",
          { { "omega_m", rabi.omega_m },
            { "omega_a", rabi.omega_a },
            { "suppression_ratio", rabi.suppression_ratio },
            { "decoherence_figure", rabi.decoherence_figure } } },
        { "bragg",
          { { "molecular_rad_s", bragg.molecular },
            { "atomic_rad_s", bragg.atomic },
            { "molecular_hz", to_hz( bragg.molecular ) },
            { "atomic_hz", to_hz( bragg.atomic ) } } },
        { "raman",
          { { "molecular_rad_s", raman.molecular },
            { "atomic_rad_s", raman.atomic },
            { "molecular_hz", to_hz( raman.molecular ) },
            { "atomic_hz", to_hz( raman.atomic ) } } },
        { "selected_geometry",
          { { "molecular_hz", to_hz( chosen.molecular ) }, { "atomic_hz", to_hz( chosen.atomic ) } } },
        { "warnings",
          { { "decoherence", rabi.decoherence_warning },
            { "atomic_coupling_dominates", rabi.suppression_ratio <= 1.0 } } },
    };

    if ( o.out.empty() )
        std::cout << report.dump( 2 ) << '\n';
    else
    {
        std::ofstream os( o.out );
        if ( !os )
            throw ConfigError( "cannot open output '" + o.out + "'" );
        os << report.dump( 2 ) << '\n';
    }
    return kExitOk;
}

//
// operator
//
struct OperatorOptions
{
    std::string scheme  = "two-axis-raman";
    double      rabi    = 1.0;
    std::size_t n_atoms = 2;
    std::string which   = "H";
    std::string out;
};

int do_operator( const OperatorOptions & o )
{
    if ( o.n_atoms < 1 )
        throw ConfigError( "n-atoms must be >= 1" );
    const auto op = [&] {
        if ( o.which == "Jx" )
            return dicke::collective_op( o.n_atoms, dicke::Axis::x );
        if ( o.which == "Jy" )
            return dicke::collective_op( o.n_atoms, dicke::Axis::y );
        if ( o.which == "Jz" )
            return dicke::collective_op( o.n_atoms, dicke::Axis::z );
        if ( o.which == "H" )
            return dicke::hamiltonian( { dicke::scheme_from_string( o.scheme ), o.rabi }, o.n_atoms );
        throw ConfigError( "which must be one of H, Jx, Jy, Jz" );
    }();
    if ( o.out.empty() )
        dicke::write_dense( std::cout, op );
    else
    {
        std::ofstream os( o.out );
        if ( !os )
            throw ConfigError( "cannot open output '" + o.out + "'" );
        dicke::write_dense( os, op );
    }
    return kExitOk;
}

} // namespace

int main( int argc, char ** argv )
{
    CLI::App app{ "Collective-spin dynamics of two-mode condensates: GHZ generation, squeezing, Raman feasibility" };
    app.require_subcommand( 1 );
    // One config file for all subcommands: [run], [scaling], [raman] sections.
    // fallthrough lets --config follow the subcommand name.
    app.set_config( "--config", "", "TOML/INI config file with [run], [scaling] or [raman] sections" );
    app.fallthrough();

    const std::map< std::string, std::string > schemes = {
        { "molmer-sorensen", "molmer-sorensen" }, { "one-axis", "one-axis" }, { "two-axis-raman", "two-axis-raman" } };

    RunOptions run;
    auto *     run_cmd = app.add_subcommand( "run", "time scan of one configuration, CSV + JSON summary" );
    run_cmd->add_option( "--scheme", run.scheme )->transform( CLI::IsMember( schemes ) );
    run_cmd->add_option( "--rabi", run.rabi, "coupling Omega_R (1 = dimensionless time)" );
    run_cmd->add_option( "--n-atoms", run.n_atoms )->required();
    run_cmd->add_option( "--initial", run.initial, "all_up | all_down | coherent:THETA,PHI" );
    run_cmd->add_option( "--t-max", run.t_max );
    run_cmd->add_option( "--n-points", run.n_points );
    run_cmd->add_option( "--outputs", run.outputs, "edge_populations, ghz_fidelity, squeezing, moments" )->delimiter( ',' );
    run_cmd->add_option( "--seed", run.seed );
    run_cmd->add_option( "--out", run.out, "CSV output path" );
    run_cmd->add_option( "--summary", run.summary, "JSON summary path (default: <out>.summary.json)" );

    ScalingCliOptions sc;
    auto *            sc_cmd = app.add_subcommand( "scaling", "min-over-time squeezing versus N with power-law fits" );
    sc_cmd->add_option( "--scheme", sc.scheme )->transform( CLI::IsMember( schemes ) );
    sc_cmd->add_option( "--rabi", sc.rabi );
    sc_cmd->add_option( "--n-list", sc.n_list )->delimiter( ',' );
    sc_cmd->add_option( "--window", sc.window, "t_max in units of the characteristic squeezing time" );
    sc_cmd->add_option( "--spacing", sc.spacing, "grid spacing in units of 1/N" );
    sc_cmd->add_option( "--initial", sc.initial );
    sc_cmd->add_option( "--out", sc.out, "JSON report path (default: stdout)" );

    RamanCliOptions rc;
    auto *          rc_cmd = app.add_subcommand( "raman", "molecular vs atomic Raman feasibility report" );
    rc_cmd->add_option( "--omega1", rc.p.omega1, "rad/s" );
    rc_cmd->add_option( "--omega2", rc.p.omega2, "rad/s" );
    rc_cmd->add_option( "--delta-m", rc.p.delta_m, "rad/s" );
    rc_cmd->add_option( "--delta-a", rc.p.delta_a, "rad/s" );
    rc_cmd->add_option( "--eta", rc.p.eta );
    rc_cmd->add_option( "--gamma-m", rc.p.gamma_m, "rad/s" );
    rc_cmd->add_option( "--omega-gg", rc.p.omega_gg, "rad/s" );
    rc_cmd->add_option( "--k", rc.p.k, "1/m" );
    rc_cmd->add_option( "--wavelength", rc.wavelength, "m (overrides --k)" );
    rc_cmd->add_option( "--mass", rc.p.mass, "kg" );
    rc_cmd->add_flag( "--counterpropagating", rc.counterpropagating );
    rc_cmd->add_option( "--out", rc.out, "JSON report path (default: stdout)" );

    OperatorOptions oc;
    auto *          oc_cmd = app.add_subcommand( "operator", "dense dump of a Dicke-basis operator" );
    oc_cmd->add_option( "--scheme", oc.scheme )->transform( CLI::IsMember( schemes ) );
    oc_cmd->add_option( "--rabi", oc.rabi );
    oc_cmd->add_option( "--n-atoms", oc.n_atoms );
    oc_cmd->add_option( "--which", oc.which, "H, Jx, Jy or Jz" );
    oc_cmd->add_option( "--out", oc.out );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError & e )
    {
        const int code = app.exit( e );
        return code == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        if ( *run_cmd )
            return do_run( run );
        if ( *sc_cmd )
            return do_scaling( sc );
        if ( *rc_cmd )
            return do_raman( rc );
        if ( *oc_cmd )
            return do_operator( oc );
    }
    catch ( const dicke::NumericalError & e )
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    catch ( const std::invalid_argument & e )
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch ( const std::exception & e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}
