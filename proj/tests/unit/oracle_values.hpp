// Generated by tests/oracles/oracles.py. Do not edit.
#pragma once
#include <array>

namespace oracle {

struct ThermoCase {
  double tau1, tau3, kappa, lambda, cv, r_gas;
  double rho, u0, u1, theta, q0, q1, s2;
  double e, p, p_rho, p_theta, p_q0, p_q1, p_s2, e_theta, e_rho, etot;
};
inline const std::array<ThermoCase, 6> thermo_cases{{
    {1.3196000000000000000, 1.7084000000000000000, 1.6202000000000000000, 1.0175000000000000000, 8.9750000000000000000e-1, 8.6240000000000000000e-1, 7.2950000000000000000e-1, -2.4600000000000000000e-1, -3.1600000000000000000e-1, 1.1236000000000000000, 4.7000000000000000000e-2, 5.5000000000000000000e-2, 7.7000000000000000000e-2, 1.0204548958012394527, 7.0000569164325466638e-1, 9.6899264000000000000e-1, 6.3080911679446319609e-1, -3.4069032962233784937e-2, -3.9868017296231024927e-2, -1.2928432432432432432e-1, 8.9287130419612557616e-1, -1.6482379439670257309e-2, 8.0291753348700418075e-1},
    {2.3060000000000000000e-1, 6.2660000000000000000e-1, 1.4906000000000000000, 1.5410000000000000000, 9.6650000000000000000e-1, 9.3760000000000000000e-1, 1.4120000000000000000, -2.6800000000000000000e-1, 5.3200000000000000000e-1, 7.7780000000000000000e-1, 7.7000000000000000000e-2, -8.9800000000000000000e-2, -1.6800000000000000000e-2, 7.5375543418694641353e-1, 1.0282735999818354297, 7.2926528000000000000e-1, 1.3256803402594545714, -1.5315140044320598335e-2, 1.7861033454285580915e-2, 6.8312005191434133679e-3, 9.6396580699793970060e-1, -1.4247409255994430129e-3, 1.3148253610719683359},
    {7.5080000000000000000e-1, 1.4582000000000000000, 1.3088000000000000000, 6.2900000000000000000e-1, 7.7900000000000000000e-1, 3.0160000000000000000e-1, 5.4650000000000000000e-1, -3.8600000000000000000e-1, -3.8400000000000000000e-1, 8.8980000000000000000e-1, -3.3200000000000000000e-2, -9.9400000000000000000e-2, -5.2000000000000000000e-2, 7.1184553685607293016e-1, 1.3998618402360112430e-1, 2.6836368000000000000e-1, 1.6880310138845243946e-1, 2.1404084651862647632e-2, 6.4083313686600818513e-2, 1.2055071542130365660e-1, 7.6443933618132684553e-1, -3.4201897266373156745e-2, 4.7002909489184385633e-1},
    {1.7192000000000000000, 9.6500000000000000000e-1, 9.3800000000000000000e-1, 8.2250000000000000000e-1, 1.7555000000000000000, 9.9760000000000000000e-1, 1.2095000000000000000, -2.3400000000000000000e-1, -1.5600000000000000000e-1, 1.4904000000000000000, 4.0200000000000000000e-2, 4.9400000000000000000e-2, 3.5800000000000000000e-2, 2.6211431661995438976, 1.7950664220579078948, 1.4868230400000000000, 1.2082707113367258715, -4.9436392914653784219e-2, -6.0750194278206391553e-2, -4.2002431610942249240e-2, 1.7527327220558480834, -3.9239075647324494300e-3, 3.2181035465183483441},
    {1.9226000000000000000, 1.9856000000000000000, 1.7462000000000000000, 8.7800000000000000000e-1, 1.8140000000000000000, 7.8160000000000000000e-1, 5.8550000000000000000e-1, -2.4200000000000000000e-1, -4.3000000000000000000e-1, 1.9538000000000000000, 5.3000000000000000000e-2, 1.7000000000000000000e-2, -4.7200000000000000000e-2, 3.5514774715861422513, 8.9071920439010446413e-1, 1.5270900800000000000, 4.5807357222018157041e-1, -2.9866939238805597247e-2, -9.5799616426357576077e-3, 1.0674296127562642369e-1, 1.8124738779840082992, -1.2441112871293341236e-2, 2.1506641456136862881},
    {8.9480000000000000000e-1, 6.1940000000000000000e-1, 1.7354000000000000000, 8.3450000000000000000e-1, 1.3205000000000000000, 3.2320000000000000000e-1, 1.9355000000000000000, 7.7000000000000000000e-1, 3.6200000000000000000e-1, 1.2132000000000000000, 4.0400000000000000000e-2, -8.8800000000000000000e-2, 6.7400000000000000000e-2, 1.6049915600063158869, 7.5521320294842345054e-1, 3.9210624000000000000e-1, 6.2722068994448388530e-1, -1.7170199679367303862e-2, 3.7740438899203380767e-2, -5.0027034152186938286e-2, 1.3187773547460771012, -1.5298165881249738605e-3, 3.8070579703922243991},
}};

struct EigenCase {
  int n;
  double tau1, tau3, kappa, lambda, cv, r_gas;
  double rho, theta, s2;
  std::array<double, 3> u, q, xi;
  double c3, c2, c1, c0;
  std::array<double, 4> roots;
};
inline const std::array<EigenCase, 6> eigen_cases{{
    {1, 1.7696000000000000000, 8.9300000000000000000e-1, 2.5400000000000000000e-1, 1.0040000000000000000, 1.7555000000000000000, 9.8560000000000000000e-1, 1.9325000000000000000, 1.6010000000000000000, 6.2000000000000000000e-3, {-1.7000000000000000000e-1, 0.0, 0.0}, {-1.3000000000000000000e-2, 0.0, 0.0}, {-1.0000000000000000000, 0.0, 0.0}, -4.7876289892803770631e-3, -3.1927227802366804465, 6.5775858284842867170e-3, 3.1045804372113797964e-1, {-1.7571284745710738631, -3.1583615088764481416e-1, 3.1787393718681369063e-1, 1.7598783172611853637}},
    {2, 1.4258000000000000000, 9.6500000000000000000e-1, 1.8848000000000000000, 1.6010000000000000000, 1.1765000000000000000, 4.7120000000000000000e-1, 1.7120000000000000000, 1.8600000000000000000, -8.7800000000000000000e-2, {-7.6200000000000000000e-1, 1.5600000000000000000e-1, 0.0}, {1.1700000000000000000e-2, -3.1600000000000000000e-2, 0.0}, {5.9612757943052205304e-1, -8.0288972408563470196e-1, 0.0}, -1.7270129148430439223e-2, -3.4673239852337152623, 2.3417343865783385483e-2, 2.3718344796115504707, {-1.5841929983030192877, -9.6600229938067080882e-1, 9.7054030405876173015e-1, 1.5969251227733588056}},
    {3, 1.6688000000000000000, 1.4168000000000000000, 1.9802000000000000000, 1.5290000000000000000, 9.4550000000000000000e-1, 7.8400000000000000000e-1, 1.6910000000000000000, 1.6402000000000000000, -3.3400000000000000000e-2, {4.3800000000000000000e-1, -5.7400000000000000000e-1, 9.9600000000000000000e-1}, {3.3000000000000000000e-3, 4.3400000000000000000e-2, -4.8900000000000000000e-2}, {-1.9026465341317418758e-1, 9.4159025674275476657e-1, 2.7786174632121972938e-1}, -2.0341607270248567685e-2, -4.1592116977984363962, 2.5652375119745521320e-2, 2.2597193425287665903, {-1.8673259614997113131, -7.9941584186085541068e-1, 8.0379333151951516560e-1, 1.8832900791113001258}},
    {1, 2.3060000000000000000e-1, 1.9496000000000000000, 6.3740000000000000000e-1, 8.8100000000000000000e-1, 1.7870000000000000000, 4.9440000000000000000e-1, 1.0715000000000000000, 1.7060000000000000000, 7.8000000000000000000e-3, {4.8600000000000000000e-1, 0.0, 0.0}, {3.4300000000000000000e-2, 0.0, 0.0}, {1.0000000000000000000, 0.0, 0.0}, -2.1002042463012755383e-2, -4.2699873804120313454, 1.7865977938311955985e-2, 3.5171973250826596645, {-1.7644646387844896739, -1.0571696845556887612, 1.0544517977871784411, 1.7881845680160127494}},
    {2, 1.4852000000000000000, 2.8280000000000000000e-1, 1.2152000000000000000, 1.6775000000000000000, 7.2350000000000000000e-1, 9.4960000000000000000e-1, 1.9220000000000000000, 1.8768000000000000000, -8.4800000000000000000e-2, {5.2000000000000000000e-1, -4.8400000000000000000e-1, 0.0}, {3.9100000000000000000e-2, 3.4400000000000000000e-2, 0.0}, {6.9350961802605648011e-1, 7.2044736775517004929e-1, 0.0}, -3.9799556213732527522e-2, -7.9844914386101211332, 1.5653143636622753930e-1, 3.9472963012771118558, {-2.7203623326098898071, -7.1792126942788368904e-1, 7.3747942821873059951e-1, 2.7406037300327754242}},
    {3, 6.8420000000000000000e-1, 2.1800000000000000000e-1, 1.3502000000000000000, 1.6250000000000000000, 1.1960000000000000000, 4.1680000000000000000e-1, 1.4540000000000000000, 1.9804000000000000000, 2.6600000000000000000e-2, {-7.2400000000000000000e-1, -8.2400000000000000000e-1, -5.1200000000000000000e-1}, {3.7900000000000000000e-2, 4.7100000000000000000e-2, -1.7900000000000000000e-2}, {-8.0500257705019296922e-1, 2.2660505613814487126e-1, 5.4828915680977710109e-1}, 1.7224526917041102339e-2, -8.2317478336606758134, -9.5724802277485138681e-2, 1.1781907700641822515e+1, {-2.5288589540782834298, -1.3652255337793771446, 1.3511470820425069429, 2.5257128788981125292}},
}};

struct EntropyCase {
  double tau1, tau3, kappa, lambda, cv, r_gas;
  double rho, u0, u1, theta, q0, q1, s2;
  double eta, eta1, production;
};
inline const std::array<EntropyCase, 4> entropy_cases{{
    {8.9120000000000000000e-1, 2.8820000000000000000e-1, 3.4220000000000000000e-1, 9.4100000000000000000e-1, 8.4050000000000000000e-1, 3.2880000000000000000e-1, 1.2560000000000000000, 4.1600000000000000000e-1, -1.5800000000000000000e-1, 1.8880000000000000000, -6.2000000000000000000e-2, -6.2400000000000000000e-2, 2.5800000000000000000e-2, 4.6145941234462219963e-1, 4.0879939376748648855e-1, 6.7182030049911267948e-3},
    {7.2380000000000000000e-1, 1.3466000000000000000, 3.0620000000000000000e-1, 1.6385000000000000000, 1.8560000000000000000, 8.7440000000000000000e-1, 1.3520000000000000000, 9.5200000000000000000e-1, -8.9600000000000000000e-1, 1.8894000000000000000, 4.4400000000000000000e-2, -8.8000000000000000000e-3, 9.7200000000000000000e-2, 9.1769310700601634038e-1, 1.8450829209208347306, 4.9261750568865979974e-3},
    {1.6724000000000000000, 1.5950000000000000000, 1.6814000000000000000, 1.7165000000000000000, 1.0145000000000000000, 7.5120000000000000000e-1, 1.5650000000000000000, -2.3200000000000000000e-1, -2.4000000000000000000e-1, 1.7606000000000000000, 8.2200000000000000000e-2, -1.5200000000000000000e-2, -8.5400000000000000000e-2, 2.3812121048875433857e-1, 5.0503675143990329056e-1, 3.7540656102434193423e-3},
    {3.8000000000000000000e-1, 1.9388000000000000000, 1.4816000000000000000, 9.4100000000000000000e-1, 5.0300000000000000000e-1, 4.9520000000000000000e-1, 1.5890000000000000000, -5.5600000000000000000e-1, -3.4000000000000000000e-1, 8.7580000000000000000e-1, -6.9800000000000000000e-2, 8.7800000000000000000e-2, -6.5800000000000000000e-2, -2.9471242379269029900e-1, 4.2295367495532135877e-1, 1.6324177412522866450e-2},
}};

/// 1D profile M = 5, L = 1, rho = 1: F = int x u dx and int u^2 dx.
inline constexpr double profile_F_1d = 2.0107927101854026629e+1;
inline constexpr double profile_u2_1d = 7.7500000000000000000;

}  // namespace oracle
