#include <cmath>

#include <gtest/gtest.h>

#include "dicke/raman.hpp"

using namespace dicke::raman;

namespace
{

RamanParams sodium()
{
    RamanParams p;
    p.omega1   = 1e8;
    p.omega2   = 1e8;
    p.delta_m  = 1e9;
    p.delta_a  = 1e12;
    p.eta      = 0.1;
    p.gamma_m  = 6e7;
    p.omega_gg = 1.1e10;
    p.k        = wavenumber( 589e-9 );
    p.mass     = 3.817e-26;
    return p;
}

} // namespace

TEST( Raman, SuppressionRatioByHand )
{
    // |eta|^2 Delta_A / Delta_M = 0.01 * 1000
    const auto r = effective_rabi( sodium() );
    EXPECT_NEAR( r.suppression_ratio, 10.0, 1e-12 );
    EXPECT_NEAR( r.omega_m / r.omega_a, r.suppression_ratio, 1e-12 );
    EXPECT_NEAR( r.omega_m, 1e16 * 0.01 / 1e9, 1e-6 );
}

TEST( Raman, DecoherenceWarning )
{
    auto p = sodium();
    EXPECT_FALSE( effective_rabi( p ).decoherence_warning );
    p.delta_m = 5 * p.gamma_m;
    EXPECT_TRUE( effective_rabi( p ).decoherence_warning );
}

TEST( Raman, RejectsNonPhysicalInputs )
{
    auto p = sodium();
    p.eta  = 1.5;
    EXPECT_THROW( effective_rabi( p ), std::invalid_argument );
    p         = sodium();
    p.delta_m = 0.0;
    EXPECT_THROW( effective_rabi( p ), std::invalid_argument );
    p      = sodium();
    p.mass = -1.0;
    EXPECT_THROW( bragg_resonances( p, true ), std::invalid_argument );
}

TEST( Raman, StructuralRatios )
{
    const auto p = sodium();
    const auto b = bragg_resonances( p, true );
    EXPECT_EQ( b.molecular / b.atomic, 0.5 );
    const auto r = raman_resonances( p );
    EXPECT_EQ( r.molecular / r.atomic, 2.0 );
    const auto co = bragg_resonances( p, false );
    EXPECT_EQ( co.molecular, r.molecular );
}

TEST( Raman, SodiumRecoilAgainstIndependentFormula )
{
    // two-photon recoil of one atom: (2 hbar k)^2 / 2M / h = 2 h / (M lambda^2)
    const double h      = 6.62607015e-34;
    const double lambda = 589e-9, M = 3.817e-26;
    const double atomic = 2 * h / ( M * lambda * lambda );
    const auto   b      = bragg_resonances( sodium(), true );
    EXPECT_NEAR( to_hz( b.atomic ) / atomic, 1.0, 1e-9 );
    EXPECT_NEAR( to_hz( b.molecular ) / ( atomic / 2 ), 1.0, 1e-9 );
    EXPECT_NEAR( to_hz( b.atomic ), 100e3, 5e3 );
    EXPECT_NEAR( to_hz( b.molecular ), 50e3, 2.5e3 );
}
