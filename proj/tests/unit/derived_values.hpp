#pragma once
// Generated by tests/oracle/derive_values.py; do not edit by hand.
#include "lowscat/numerics.hpp"
namespace derived {
using lowscat::Complex;
using lowscat::Mat2C;
struct BarrierCase { Complex z; double a, L, ell; Mat2C m_at_k[3]; Complex a1, a2, b1, b2, g1; Mat2C u[5]; Complex t[5]; };
inline constexpr double kSampleK[3] = {0.05, 0.7, 3.0};
inline const BarrierCase kRealBarrier{
  {2.0, 0.0}, 0.5, 1.0, 1.0,
  {{{0.80994861988772463, -27.36214155399502}, {-2.731028477986189, -27.219189749883215}, {-2.731028477986189, 27.219189749883215}, {0.80994861988772463, 27.36214155399502}},
   {{0.8219927384745605, -1.9034287190191551}, {-1.7898092060186495, -0.30870043171771016}, {-1.7898092060186495, 0.30870043171771016}, {0.8219927384745605, 1.9034287190191551}},
   {{0.9384381392112298, -0.35060926451749471}, {0.016748616877497141, -0.057554159922849292}, {0.016748616877497141, 0.057554159922849292}, {0.9384381392112298, 0.35060926451749471}}},
  {-1.9267130594172012, 0.0}, {-2.8623329926128662, 0.0}, {2.7365977440171814, 0.0}, {3.5464824286171615, 0.0}, {3.0158048377214866, 0.0},
  {{{0.0, -1.3682988720085907}, {0.0, -1.3682988720085907}, {0.0, 1.3682988720085907}, {0.0, 1.3682988720085907}},
   {{0.80988468459998018, 0.0}, {-2.7365977440171814, 0.0}, {-2.7365977440171814, 0.0}, {0.80988468459998018, 0.0}},
   {{0.0, 0.076735922554310201}, {0.0, 2.9390689151671764}, {0.0, -2.9390689151671764}, {0.0, -0.076735922554310201}},
   {{0.025578640851436734, 0.0}, {2.2293408383114443, 0.0}, {2.2293408383114443, 0.0}, {0.025578640851436734, 0.0}},
   {{0.0, -0.0072806072765441454}, {0.0, -1.326733580625006}, {0.0, 1.326733580625006}, {0.0, 0.0072806072765441454}}},
  {{0.0, 0.0}, {0.0, -0.73083448393993972}, {0.43257483261067196, 0.0}, {0.0, 0.21505131629846244}, {-0.08936569950758687, 0.0}}};
inline const BarrierCase kComplexBarrier{
  {1.0, 1.0}, 0.0, 1.0, 1.5,
  {{{14.503958053412033, -9.9142669823299334}, {12.987140557387727, -10.483339278367143}, {-13.968846527679256, 9.1344156336814315}, {-12.492247078330948, 9.7365577008337748}},
   {{1.9458724836225705, -0.78673930597022717}, {0.26918087274823808, -1.0704469814261624}, {-1.1006235926777854, -0.083323403308617168}, {0.065047293840296845, 0.62023868933573935}},
   {{1.1774127102363726, -0.19637194984712892}, {-0.029041253481208164, 0.0023027430266593862}, {0.027241126589719448, -0.010325601741762744}, {0.82565013921083044, 0.13801203609190128}}},
  {0.5145932527637832, -0.76387878334559195}, {-0.22057546368859941, -0.26825328986285935}, {1.4737929913634953, 2.0249831630561476}, {1.4971219136727801, 0.58610999202517311}, {0.21722182179203259, 0.31586961352549201},
  {{{0.67499438768538253, -0.49126433045449845}, {0.67499438768538253, -0.49126433045449845}, {-0.67499438768538253, 0.49126433045449845}, {-0.67499438768538253, 0.49126433045449845}},
   {{1.0058575832182816, -0.088884395660209422}, {-0.49126433045449845, -0.67499438768538253}, {-0.49126433045449845, -0.67499438768538253}, {1.0058575832182816, -0.088884395660209422}},
   {{-0.035712242746974496, -0.0025152314224251114}, {-0.43809217754126352, 0.328347964110474}, {0.43809217754126352, -0.328347964110474}, {0.035712242746974496, 0.0025152314224251114}},
   {{-0.00083841047414170381, 0.011904080915658165}, {0.16459318729230785, 0.21309404831280268}, {0.16459318729230785, 0.21309404831280268}, {-0.00083841047414170381, 0.011904080915658165}},
   {{0.0033948784185039778, 0.00023266340421448283}, {0.083200692274018685, -0.065976872959451831}, {-0.083200692274018685, 0.065976872959451831}, {-0.0033948784185039778, -0.00023266340421448283}}},
  {{0.0, 0.0}, {-0.64565758049006646, -0.46991285374978071}, {-0.25113958160368783, -0.5929337212417698}, {0.068991674103261592, -0.52890827957168779}, {0.27422716945362467, -0.34947481199646214}}};
struct HalfLineCase { Complex z; double a, L; Complex alpha, beta; double k; Complex r; };
inline const HalfLineCase kHalfLine[] = {
  {{3.0, 0.0}, 0.4, 1.0, {1.0, 0.0}, {0.0, 0.0}, 0.8, {-0.27083558306796922, 0.96262562138363694}},
  {{-2.0, 0.0}, 0.2, 1.0, {0.0, 0.0}, {1.0, 0.0}, 1.3, {0.71520877989810378, 0.69891086781982847}},
  {{1.0, -0.5}, 0.6, 1.0, {1.0, 0.0}, {0.5, 0.2}, 0.3, {-2.9938481397637955, -2.3350789497922501}},
};
}  // namespace derived
