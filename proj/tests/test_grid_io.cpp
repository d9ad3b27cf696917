#include "ssmdrift/errors.hpp"
#include "ssmdrift/scattering_grid.hpp"
#include "ssmdrift/synth.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

using namespace ssmdrift;

namespace
{

std::string to_text(const ScatteringGrid &g)
{
    std::ostringstream os;
    write_grid(os, g);
    return os.str();
}

ScatteringGrid from_text(const std::string &s)
{
    std::istringstream is(s);
    return parse_grid(is);
}

ScatteringGrid sample_grid()
{
    const std::vector<double> tori{1, 2, 3, 4, 5, 6, 7};
    return generate_grid(make_reference_model(), tori, 128);
}

} // namespace

TEST(GridIo, SevenToriRoundTrip)
{
    const ScatteringGrid g = sample_grid();
    const ScatteringGrid back = from_text(to_text(g));
    ASSERT_EQ(back.tori.size(), 7u);
    EXPECT_EQ(back.sample_count(), 7u * 128u);
    for (std::size_t t = 0; t < 7; ++t) {
        EXPECT_EQ(back.tori[t].level, g.tori[t].level);
        for (std::size_t k = 0; k < 128; ++k) {
            EXPECT_EQ(back.tori[t].samples[k].phi, g.tori[t].samples[k].phi);
            EXPECT_EQ(back.tori[t].samples[k].phi_prime, g.tori[t].samples[k].phi_prime);
            EXPECT_EQ(back.tori[t].samples[k].i_prime, g.tori[t].samples[k].i_prime);
        }
    }
}

TEST(GridIo, ByteStableAfterOneNormalization)
{
    // Hand-written input with short decimals and comments normalizes once.
    std::string text = "# hand written\nI,phi,I_prime,phi_prime\n";
    for (const char *pp : {"0", "1.5707963267948966", "3.1415926535897931", "4.7123889803846897"}) {
        text += "0.5, 0.1, 0.5, " + std::string(pp) + "\n";
    }
    const std::string once = to_text(from_text(text));
    const std::string twice = to_text(from_text(once));
    EXPECT_EQ(once, twice);
    const std::string synth = to_text(sample_grid());
    EXPECT_EQ(to_text(from_text(synth)), synth);
}

TEST(GridIo, NonEquispacedPhiPrime)
{
    ScatteringGrid g = sample_grid();
    g.tori[3].samples[5].phi_prime += 1e-6;
    try {
        from_text(to_text(g));
        FAIL() << "expected InvariantError";
    } catch (const InvariantError &e) {
        EXPECT_NE(std::string(e.what()).find("torus #3"), std::string::npos) << e.what();
    }
}

TEST(GridIo, SampleCountMustBePowerOfTwo)
{
    ScatteringGrid g = sample_grid();
    g.tori.resize(1);
    g.tori[0].samples.resize(96);
    EXPECT_THROW(g.validate(), InvariantError);
}

TEST(GridIo, LevelsPositiveAndSorted)
{
    ScatteringGrid g = sample_grid();
    std::swap(g.tori[1], g.tori[2]);
    EXPECT_THROW(from_text(to_text(g)), InvariantError);

    std::string text = "I,phi,I_prime,phi_prime\n";
    for (int k = 0; k < 2; ++k) {
        text += "-1,0,0," + std::to_string(k * 3.141592653589793) + "\n";
    }
    EXPECT_THROW(from_text(text), InvariantError);
}

TEST(GridIo, ParseErrorsCarryLineNumber)
{
    try {
        from_text("I,phi,I_prime,phi_prime\n1,0,1,0\n1,abc,1,3.14\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        from_text("I,phi,I_prime\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
    }
    try {
        from_text("I,phi,I_prime,phi_prime\n1,0,1\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(from_text(""), ParseError);
}

TEST(GridIo, MissingFile)
{
    EXPECT_THROW(load_grid("/nonexistent/grid.csv"), ParseError);
}
