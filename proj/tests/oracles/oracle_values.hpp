// Generated by tests/oracles/derive_oracles.py. Do not edit by hand.
#pragma once
namespace hartree::oracle {
// d=4, a=-0.75: rho
inline constexpr double kParamsD4A075Rho = 0.5;
// d=4, a=-0.75: nu
inline constexpr double kParamsD4A075Nu = 0.5;
// d=3, a=-0.2475: rho
inline constexpr double kParamsD3A02475Rho = 0.45;
// d=3, a=-0.2475: nu
inline constexpr double kParamsD3A02475Nu = 0.05;
// exp(-r^2/2) in d=3: (1/2) int |u|^2
inline constexpr double kGaussD3Mass = 2.7841639984158539226;
// exp(-r^2/2) in d=3: int |grad u|^2
inline constexpr double kGaussD3Grad = 8.3524919952475617679;
// exp(-r^2/2) in d=3: int |u|^2/|x|^2
inline constexpr double kGaussD3InvSq = 11.136655993663415691;
// exp(-r^2/2) in d=3: int |x|^2 |u|^2
inline constexpr double kGaussD3Gamma = 8.3524919952475617679;
// exp(-r^2/2) in d=3: L_V
inline constexpr double kGaussD3Lv = 7.7515691700749550439;
// exp(-r^2/2) in d=4: (1/2) int |u|^2
inline constexpr double kGaussD4Mass = 4.9348022005446793094;
// exp(-r^2/2) in d=4: int |grad u|^2
inline constexpr double kGaussD4Grad = 19.739208802178717238;
// exp(-r^2/2) in d=4: int |u|^2/|x|^2
inline constexpr double kGaussD4InvSq = 9.8696044010893586188;
// exp(-r^2/2) in d=4: int |x|^2 |u|^2
inline constexpr double kGaussD4Gamma = 19.739208802178717238;
// exp(-r^2/2) in d=4: L_V
inline constexpr double kGaussD4Lv = 12.176136379250304655;
// exp(-r^2/2), d=3, a=-0.2475: H
inline constexpr double kGaussD3H02475 = 2.7980848184079331923;
// int_0^inf exp(-r^2) r^2 dr
inline constexpr double kGaussMomentD3 = 0.44311346272637900682;
// sphere average, d=3, r=2, s=1
inline constexpr double kKernelD3R2S1 = 0.27465307216702742285;
// sphere average, d=4, r=2, s=1
inline constexpr double kKernelD4R2S1 = 0.25;
// sphere average, d=5, r=1.0, s=0.3
inline constexpr double kKernelD5R1p0S0p3 = 0.98176132999171095159;
// sphere average, d=5, r=1.0, s=0.7
inline constexpr double kKernelD5R1p0S0p7 = 0.89367543667650522339;
// sphere average, d=5, r=1.0, s=0.95
inline constexpr double kKernelD5R1p0S0p95 = 0.7828961802962852099;
// sphere average, d=5, r=2.5, s=1.0
inline constexpr double kKernelD5R2p5S1p0 = 0.15475623267693240477;
// sphere average, d=6, r=1.0, s=0.3
inline constexpr double kKernelD6R1p0S0p3 = 0.97000000000000000222;
// sphere average, d=6, r=1.0, s=0.7
inline constexpr double kKernelD6R1p0S0p7 = 0.83666666666666668739;
// sphere average, d=6, r=1.0, s=0.95
inline constexpr double kKernelD6R1p0S0p95 = 0.69916666666666669479;
// sphere average, d=6, r=2.5, s=1.0
inline constexpr double kKernelD6R2p5S1p0 = 0.15146666666666666667;
// sphere average, d=7, r=1.0, s=0.3
inline constexpr double kKernelD7R1p0S0p3 = 0.96181750914536167683;
// sphere average, d=7, r=1.0, s=0.7
inline constexpr double kKernelD7R1p0S0p7 = 0.8020121294135465766;
// sphere average, d=7, r=1.0, s=0.95
inline constexpr double kKernelD7R1p0S0p95 = 0.65618337714198702169;
// sphere average, d=7, r=2.5, s=1.0
inline constexpr double kKernelD7R2p5S1p0 = 0.14922656684210252968;
// Monte-Carlo L_V of (1+0.3 r^2) exp(-r^2/(2*1.2^2)), d=3, 1e7 samples
inline constexpr double kMcBumpD3Mean = 85.405559200101421879;
// standard error of the estimate above
inline constexpr double kMcBumpD3StdErr = 0.031524381748974636408;
inline constexpr double kMcBumpD3C = 0.3;
inline constexpr double kMcBumpD3S = 1.2;
// Monte-Carlo L_V of (1+0.5 r^2) exp(-r^2/(2*0.9^2)), d=4, 1e7 samples
inline constexpr double kMcBumpD4Mean = 53.852974193844971751;
// standard error of the estimate above
inline constexpr double kMcBumpD4StdErr = 0.030192718959241353349;
inline constexpr double kMcBumpD4C = 0.5;
inline constexpr double kMcBumpD4S = 0.9;
// sharp HLS constant, d=3 (extremizer quotient agrees to 1e-10)
inline constexpr double kHlsD3 = 7.3038721193751091648;
// sharp HLS constant, d=4 (extremizer quotient agrees to 1e-10)
inline constexpr double kHlsD4 = 3.8476494904855922866;
// two cells, volumes (1, 3), values (1, 2): inner output
inline constexpr double kTwoCellInner = 2.0;
// two cells, volumes (1, 3), values (1, 2): outer output
inline constexpr double kTwoCellOuter = 1.7320508075688771932;
// two cells, volumes (3, 1), values (1, 2): inner output
inline constexpr double kTwoCellWideInner = 1.4142135623730951455;
// two cells, volumes (3, 1), values (1, 2): outer output
inline constexpr double kTwoCellWideOuter = 1.0;
}  // namespace hartree::oracle
