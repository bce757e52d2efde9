// Copyright 2026 The RegTopK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

// Reference loss curves for the two-worker logistic toy problem
// (w0 = [0, 1], lr 0.9, k = 1), t = 0 .. 100.

#pragma once

#include <array>

namespace regtopk::golden {

inline constexpr std::array<double, 101> kToyNone = {
    0.3132616875182228,
    0.25370563548358493,
    0.21191938042036657,
    0.18129846918090053,
    0.15804323758136132,
    0.1398568080066663,
    0.12528608965486968,
    0.11337424038314028,
    0.1034689093611886,
    0.09511175245836298,
    0.08797220867849892,
    0.08180637527415294,
    0.0764306505659697,
    0.07170436026460299,
    0.06751801481319772,
    0.06378519268116806,
    0.060436815801216404,
    0.057417038108249906,
    0.054680243640390785,
    0.052188821732928624,
    0.04991149548304802,
    0.04782205010395581,
    0.045898354330541784,
    0.044121599333065656,
    0.04247570097790551,
    0.040946826103498146,
    0.03952301390667582,
    0.03819387096104483,
    0.0369503237419168,
    0.035784416433872646,
    0.03468914467061875,
    0.033658317994053624,
    0.03268644542374661,
    0.0317686397427149,
    0.030900537032595432,
    0.03007822870455887,
    0.029298203824974715,
    0.028557299966021972,
    0.027852661150064607,
    0.02718170172418573,
    0.02654207521396218,
    0.025931647375577092,
    0.025348472801988146,
    0.024790774549227044,
    0.02425692633847888,
    0.023745436962632,
    0.02325493658581812,
    0.022784164673679805,
    0.022331959332745246,
    0.02189724787100796,
    0.021479038419856024,
    0.021076412480933802,
    0.02068851828117008,
    0.02031456483572135,
    0.019953816632528886,
    0.01960558886398785,
    0.019269243141239734,
    0.01894418363513866,
    0.018629853595216114,
    0.018325732204210465,
    0.018031331731074327,
    0.017746194949979113,
    0.01746989279681125,
    0.017202022238085396,
    0.016942204330177273,
    0.01669008244936644,
    0.016445320675427453,
    0.016207602313469217,
    0.015976628540442888,
    0.01575211716423465,
    0.01553380148458323,
    0.015321429246215358,
    0.015114761675619242,
    0.014913572593770205,
    0.014717647597919726,
    0.01452678330626686,
    0.01434078665994907,
    0.014159474277347608,
    0.013982671856197811,
    0.01381021361942314,
    0.013641941801021061,
    0.013477706168659235,
    0.013317363579966414,
    0.013160777569781488,
    0.013007817965867264,
    0.012858360530830453,
    0.012712286628187644,
    0.01256948291070123,
    0.012429841029272108,
    0.01229325736082824,
    0.012159632753777105,
    0.012028872289717343,
    0.011900885060210711,
    0.01177558395751657,
    0.011652885478281163,
    0.01153270953925782,
    0.011414979304205403,
    0.011299621021184158,
    0.01118656386952845,
    0.011075739815829239,
    0.01096708347831878,
};

inline constexpr std::array<double, 101> kToyTopK = {
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
    0.3132616875182228,
};

inline constexpr std::array<double, 101> kToyRegTopK = {
    0.3132616875182228,
    0.3132616875182228,
    0.2043337658201848,
    0.2043337658201848,
    0.15061831680513285,
    0.15061831680513285,
    0.11901193829475559,
    0.11901193829475559,
    0.09827923815532132,
    0.09827923815532132,
    0.0836587674122629,
    0.0836587674122629,
    0.0728050227006296,
    0.0728050227006296,
    0.06443304245794443,
    0.06443304245794443,
    0.05778125146154424,
    0.05778125146154424,
    0.05237012303775674,
    0.05237012303775674,
    0.04788288969614484,
    0.04788288969614484,
    0.044101990592272655,
    0.044101990592272655,
    0.040873104154983735,
    0.040873104154983735,
    0.03808375384526146,
    0.03808375384526146,
    0.035650040413497196,
    0.035650040413497196,
    0.03350811680358467,
    0.03350811680358467,
    0.031608540574866076,
    0.031608540574866076,
    0.02991243184274419,
    0.02991243184274419,
    0.028388797814203216,
    0.028388797814203216,
    0.027012630811616627,
    0.027012630811616627,
    0.025763531034338132,
    0.025763531034338132,
    0.024624692672298228,
    0.024624692672298228,
    0.023582146298141097,
    0.023582146298141097,
    0.022624185052362626,
    0.022624185052362626,
    0.02174092464697344,
    0.02174092464697344,
    0.020923962156130235,
    0.020923962156130235,
    0.020166108661321534,
    0.020166108661321534,
    0.019461177757450203,
    0.019461177757450203,
    0.018803816766160122,
    0.018803816766160122,
    0.018189370926217766,
    0.018189370926217766,
    0.01761377328369794,
    0.01761377328369794,
    0.017073454783428418,
    0.017073454783428418,
    0.016565270367391437,
    0.016565270367391437,
    0.016086437852088745,
    0.016086437852088745,
    0.015634487079814494,
    0.015634487079814494,
    0.015207217384566514,
    0.015207217384566514,
    0.014802661828913502,
    0.014802661828913502,
    0.014419056987141193,
    0.014419056987141193,
    0.014054817296715297,
    0.014054817296715297,
    0.013708513192294358,
    0.013708513192294358,
    0.013378852387246145,
    0.013378852387246145,
    0.013064663786598388,
    0.013064663786598388,
    0.01276488360981402,
    0.01276488360981402,
    0.012478543377248165,
    0.012478543377248165,
    0.012204759474737894,
    0.012204759474737894,
    0.011942724059695136,
    0.011942724059695136,
    0.011691697111769409,
    0.011691697111769409,
    0.011450999463496047,
    0.011450999463496047,
    0.011220006672851227,
    0.011220006672851227,
    0.01099814362142096,
    0.01099814362142096,
    0.010784879739895448,
};

}  // namespace regtopk::golden
