"""Static quadrature data: a symmetric 37-point, degree-13 triangle rule.

Nodes are stored as barycentric triples; weights are normalized to sum to 1,
so applying the rule to the constant 1 returns the triangle area. The rule is
fully symmetric: one centroid point, four 3-point orbits, and four 6-point
orbits. Correctness (exact integration of every bivariate monomial of total
degree <= 13) is enforced by the test suite against analytic simplex moments,
not by provenance of the constants.

NULL_RULES holds four orthonormal weight vectors over the same 37 nodes. Each
annihilates all polynomials of total degree <= 6 (the first also kills degree
7), so their sums respond only to the integrand content the rule itself does
not capture; the adaptive driver combines them into an error estimate.
"""

import numpy as np

DEGREE = 13
NUM_POINTS = 37

BARY = np.array([[0.33333333333333331, 0.33333333333333331, 0.33333333333333331],
 [0.42915961254311075, 0.42915961254311075, 0.14168077491377853],
 [0.42915961254311075, 0.14168077491377853, 0.42915961254311075],
 [0.14168077491377853, 0.42915961254311075, 0.42915961254311075],
 [0.12445782206399926, 0.12445782206399926, 0.75108435587200151],
 [0.12445782206399926, 0.75108435587200151, 0.12445782206399926],
 [0.75108435587200151, 0.12445782206399926, 0.12445782206399926],
 [0.22584007286790203, 0.22584007286790203, 0.54831985426419594],
 [0.22584007286790203, 0.54831985426419594, 0.22584007286790203],
 [0.54831985426419594, 0.22584007286790203, 0.22584007286790203],
 [0.48742864529736624, 0.48742864529736624, 0.02514270940526753],
 [0.48742864529736624, 0.02514270940526753, 0.48742864529736624],
 [0.02514270940526753, 0.48742864529736624, 0.48742864529736624],
 [0.12452541585132824, 0.84874177435433551, 0.02673280979433629],
 [0.12452541585132824, 0.02673280979433629, 0.84874177435433551],
 [0.84874177435433551, 0.12452541585132824, 0.02673280979433629],
 [0.84874177435433551, 0.02673280979433629, 0.12452541585132824],
 [0.02673280979433629, 0.12452541585132824, 0.84874177435433551],
 [0.02673280979433629, 0.84874177435433551, 0.12452541585132824],
 [0.00493532348954306, 0.28621475354434200, 0.70884992296611493],
 [0.00493532348954306, 0.70884992296611493, 0.28621475354434200],
 [0.28621475354434200, 0.00493532348954306, 0.70884992296611493],
 [0.28621475354434200, 0.70884992296611493, 0.00493532348954306],
 [0.70884992296611493, 0.00493532348954306, 0.28621475354434200],
 [0.70884992296611493, 0.28621475354434200, 0.00493532348954306],
 [0.01635078050759145, 0.03285424868085981, 0.95079497081154873],
 [0.01635078050759145, 0.95079497081154873, 0.03285424868085981],
 [0.03285424868085981, 0.01635078050759145, 0.95079497081154873],
 [0.03285424868085981, 0.95079497081154873, 0.01635078050759145],
 [0.95079497081154873, 0.01635078050759145, 0.03285424868085981],
 [0.95079497081154873, 0.03285424868085981, 0.01635078050759145],
 [0.07127447151191105, 0.64420476446827069, 0.28452076401981824],
 [0.07127447151191105, 0.28452076401981824, 0.64420476446827069],
 [0.64420476446827069, 0.07127447151191105, 0.28452076401981824],
 [0.64420476446827069, 0.28452076401981824, 0.07127447151191105],
 [0.28452076401981824, 0.07127447151191105, 0.64420476446827069],
 [0.28452076401981824, 0.64420476446827069, 0.07127447151191105]])

WEIGHTS = np.array([0.06666531183964321, 0.05637138317907531, 0.05637138317907531,
 0.05637138317907531, 0.03254577710106209, 0.03254577710106209,
 0.03254577710106209, 0.05703687953133590, 0.05703687953133590,
 0.05703687953133590, 0.02704770288106011, 0.02704770288106011,
 0.02704770288106011, 0.01751340205091933, 0.01751340205091933,
 0.01751340205091933, 0.01751340205091933, 0.01751340205091933,
 0.01751340205091933, 0.00913843881437103, 0.00913843881437103,
 0.00913843881437103, 0.00913843881437103, 0.00913843881437103,
 0.00913843881437103, 0.00394096534143476, 0.00394096534143476,
 0.00394096534143476, 0.00394096534143476, 0.00394096534143476,
 0.00394096534143476, 0.03846210380706763, 0.03846210380706763,
 0.03846210380706763, 0.03846210380706763, 0.03846210380706763,
 0.03846210380706763])

NULL_RULES = np.array([[ 0.27098009692545594, -0.33935540813827980, -0.33935540813659310,
  -0.33935540813702630, -0.25273156469910052, -0.25273156469925040,
  -0.25273156470013669,  0.08496289605214187,  0.08496289605331502,
   0.08496289605284005,  0.05614030879074652,  0.05614030879059303,
   0.05614030878844437,  0.07809652350619543,  0.07809652350611015,
   0.07809652350403523,  0.07809652350596601,  0.07809652350251697,
   0.07809652350250100, -0.09550360657969457, -0.09550360657937752,
  -0.09550360658101094, -0.09550360658112943, -0.09550360658091360,
  -0.09550360658131683, -0.01283653838592587, -0.01283653838590271,
  -0.01283653839195881, -0.01283653839199356, -0.01283653839162785,
  -0.01283653838654220,  0.21057215597452278,  0.21057215597527013,
   0.21057215597381782,  0.21057215597574697,  0.21057215597368728,
   0.21057215597387474],
 [-0.28051277136290187, -0.01117664689873316, -0.05230751758594469,
  -0.02136871233137116, -0.01991658856225388, -0.13096124507023577,
  -0.05853592246832788,  0.28928706646992780,  0.18347800436665515,
   0.21485463992192139, -0.06545189729108955,  0.04564163404104365,
   0.14959965618564205, -0.20027827293432410,  0.00414816839948826,
   0.01844041230289770,  0.01753585882289633,  0.07467114598874681,
   0.32630021211878557, -0.00724351857256629, -0.12335691977710864,
   0.02621632099834043,  0.06739778856403240, -0.00921076743799154,
   0.04992115721784015, -0.05014535462020572, -0.49141134533001718,
   0.02808720536002335,  0.46369066600559661,  0.04556934238030074,
  -0.05271492368568035, -0.08104599774875118, -0.18462144328608254,
  -0.03839326110931608, -0.06933300529495062, -0.11690385572992754,
   0.06005068795364138],
 [ 0.29821193202177987, -0.12705205238349077,  0.00146323121941790,
   0.21579555295762820,  0.20514127137190979,  0.03662513804795271,
  -0.01913953759020541, -0.31521196653317129, -0.29343161354962016,
  -0.12236200459596253, -0.09865468950599308, -0.00309001526127405,
  -0.03623384585245995, -0.14880171801367123, -0.16055358606767295,
  -0.17285883573630434,  0.14352146757912315,  0.00423694116966282,
   0.07844364664624236,  0.04119167307000247, -0.00578655874129935,
   0.00343393381372572, -0.02399979448558532, -0.04644519165946862,
   0.02764690462572159, -0.17884931614290589, -0.21433898179375752,
   0.21068297584515244,  0.23292269208359806, -0.29475406246171965,
   0.30485279007827704, -0.01577565189393765, -0.09547509778344242,
   0.01959503593392145,  0.18029999206030675,  0.09315663369503577,
   0.27559270783248530],
 [ 0.20825157155731289,  0.06338792659884028, -0.12553259071543837,
   0.12513910411954385,  0.17043706553857710,  0.04147644267039636,
  -0.05644556427335263, -0.09651909283632659, -0.29380672788116624,
  -0.12016033184340409,  0.01212807120264033, -0.06353830922557642,
  -0.04494489375392539, -0.05988222560811959, -0.08405176190138272,
   0.24997072026416559, -0.23063967044364564, -0.08040338351561513,
   0.02622434371464250,  0.09228775130153949, -0.03145170061576445,
   0.02933119090494110, -0.03123946840778489, -0.00195219990458792,
  -0.05974030142859218,  0.01497426304810453, -0.10412411153649029,
   0.02068625157530900,  0.11197092282769475,  0.49497980274912501,
  -0.49622667199477316,  0.08879763610038145, -0.14128165557791503,
   0.25319206971968528, -0.03376379724710710,  0.04040183796822834,
   0.11206748684984053]])

BARY.setflags(write=False)
WEIGHTS.setflags(write=False)
NULL_RULES.setflags(write=False)
