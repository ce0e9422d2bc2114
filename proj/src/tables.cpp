#include <stdexcept>

#include "amgpoly/minimax.hpp"

namespace amgpoly {

namespace {

// a*_k and Lambda_k for k = 1..20, regenerated and compared by the test suite.
constexpr double kAStar[kMaxTabulatedAStar] = {
    0.33333333333333381,
    0.18053599274030063,
    0.11592784648622126,
    0.08207806595903841,
    0.061849600241337621,
    0.048660582342606187,
    0.039513298602405725,
    0.032870101754487922,
    0.027870286272179936,
    0.023998740960061972,
    0.020930440043225886,
    0.018451309904506562,
    0.016415258604259166,
    0.014719563807687526,
    0.013290132475784394,
    0.012072331773769686,
    0.011025096460638392,
    0.01011703300648586,
    0.0093237789039835716,
    0.0086261728849516203};
constexpr double kLambda[kMaxTabulatedAStar] = {
    0.33333333333333348,
    0.11201528448347238,
    0.058379910888747485,
    0.036458562579490837,
    0.0251807505038628,
    0.018552356622483446,
    0.01429969435512215,
    0.011395702254433452,
    0.0093177739518963722,
    0.0077758200292147904,
    0.0065977289816327922,
    0.005675856042158642,
    0.0049399274109782915,
    0.0043424051275929281,
    0.0038501517289458091,
    0.0034394673581608481,
    0.0030930211260038363,
    0.0027978909828815226,
    0.0025442756845434822,
    0.0023246270560875111};

const std::vector<BetaTable>& beta_tables() {
  // Minimax coefficients for k = 1..12 (optimize_beta with default options).
  static const std::vector<BetaTable> tables = {
      {1, {1.1249999999507816}, 0.33333333334791659, true},
      {2, {1.023873032536736, 1.2640893852578947}, 0.10557278463048776, true},
      {3, {1.0084251831241524, 1.0886783791702563, 1.3375321643209221}, 0.052095066050778981, true},
      {4, {1.0039139699445787, 1.0403575808640835, 1.1486336860975341, 1.3826923125605322}, 0.031091177352740466, true},
      {5, {1.002128851964168, 1.0217375761611873, 1.0787237593965557, 1.1980995613426351, 1.4132289789455184}, 0.020672183986215981, true},
      {6, {1.0012848872902436, 1.0130429456771894, 1.046783278315035, 1.1161630117643861, 1.2382903041002042, 1.4352457516184935}, 0.014743290596180993, true},
      {7, {1.0008314664971252, 1.0084439708494832, 1.0300836572408527, 1.0740832648193743, 1.1503672950549473, 1.2711478646847421, 1.4518915127192884}, 0.01104686981811067, true},
      {8, {1.0005748301986435, 1.0057696974432433, 1.0205064249188485, 1.050196590084959, 1.1011521557968595, 1.1808682361065594, 1.2983688609180426, 1.4648841875131551}, 0.0085865319214574413, true},
      {9, {1.0004097570133863, 1.004124468691844, 1.0146018049794372, 1.0356114609443894, 1.0713993580620271, 1.1268833442805457, 1.2078515166846837, 1.3212187846555252, 1.4752984082875453}, 0.006866169680602688, true},
      {10, {1.0003089163849777, 1.0030378341687405, 1.0107829311632168, 1.0261787354987819, 1.0523221073547357, 1.0925628870282666, 1.1508110444443733, 1.2317559288245636, 1.3405532224068546, 1.4839302978073674}, 0.0056159210576756415, true},
      {11, {1.0002260499537192, 1.0023258206654928, 1.0081588095186125, 1.0198439061442017, 1.0394900388352384, 1.0696566811907771, 1.1130578171171508, 1.1728901786484283, 1.2529211039488808, 1.3571829073883754, 1.4911098162568734}, 0.0046787873281592916, true},
      {12, {1.0001810903342767, 1.0017990084227872, 1.0063529830384734, 1.0153704155208176, 1.0305813132200068, 1.0537483086488266, 1.0870040621345605, 1.1325928910972307, 1.1931503735365552, 1.271735371179159, 1.3716515975884003, 1.4971414081378027}, 0.003958240698072297, true}};
  return tables;
}

}  // namespace

double tabulated_a_star(int k) {
  if (k < 1 || k > kMaxTabulatedAStar) throw std::out_of_range("tabulated_a_star: degree");
  return kAStar[k - 1];
}

double tabulated_lambda(int k) {
  if (k < 1 || k > kMaxTabulatedAStar) throw std::out_of_range("tabulated_lambda: degree");
  return kLambda[k - 1];
}

bool has_tabulated_beta(int k) { return k >= 1 && k <= static_cast<int>(beta_tables().size()); }

const BetaTable& tabulated_beta(int k) {
  if (!has_tabulated_beta(k)) throw std::out_of_range("tabulated_beta: degree");
  return beta_tables()[k - 1];
}

}  // namespace amgpoly
