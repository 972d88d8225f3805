// Copyright 2026 The wavefprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Generated by tools/scripts/gen_filter_taps.py. Do not edit.

#include "filter_taps.h"

namespace wavefprint::detail {

constexpr double k_haar[] = {
    0.7071067811865476,
    0.7071067811865476,
};
constexpr double k_db2[] = {
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
};
constexpr double k_db3[] = {
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
};
constexpr double k_db4[] = {
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
};
constexpr double k_db5[] = {
    0.16010239797419293,
    0.6038292697971896,
    0.7243085284377729,
    0.13842814590132074,
    -0.24229488706638203,
    -0.032244869584638375,
    0.07757149384004572,
    -0.006241490212798274,
    -0.012580751999081999,
    0.0033357252854737712,
};
constexpr double k_db6[] = {
    0.11154074335010947,
    0.49462389039845306,
    0.7511339080210954,
    0.31525035170919763,
    -0.22626469396543983,
    -0.12976686756726194,
    0.09750160558732304,
    0.027522865530305727,
    -0.03158203931748603,
    0.0005538422011614961,
    0.004777257510945511,
    -0.0010773010853084796,
};
constexpr double k_db7[] = {
    0.07785205408500918,
    0.3965393194819173,
    0.7291320908462351,
    0.4697822874051931,
    -0.14390600392856498,
    -0.22403618499387498,
    0.07130921926683026,
    0.08061260915108308,
    -0.03802993693501441,
    -0.01657454163066688,
    0.01255099855609984,
    0.0004295779729213665,
    -0.0018016407040474908,
    0.00035371379997452024,
};
constexpr double k_db8[] = {
    0.05441584224310401,
    0.31287159091429995,
    0.6756307362972898,
    0.5853546836542067,
    -0.015829105256349306,
    -0.2840155429615469,
    0.0004724845739132828,
    0.12874742662047847,
    -0.017369301001807547,
    -0.044088253930794755,
    0.013981027917398282,
    0.008746094047405777,
    -0.004870352993451574,
    -0.00039174037337694705,
    0.0006754494064505693,
    -0.00011747678412476953,
};
constexpr double k_db9[] = {
    0.038077947363878345,
    0.24383467461259034,
    0.6048231236901112,
    0.6572880780513005,
    0.13319738582500756,
    -0.2932737832791749,
    -0.09684078322297646,
    0.14854074933810638,
    0.03072568147933338,
    -0.06763282906132997,
    0.00025094711483145197,
    0.022361662123679096,
    -0.004723204757751397,
    -0.00428150368246343,
    0.0018476468830562265,
    0.00023038576352319597,
    -0.0002519631889427101,
    3.93473203162716e-05,
};
constexpr double k_db10[] = {
    0.026670057900555554,
    0.1881768000776915,
    0.5272011889317256,
    0.6884590394536035,
    0.2811723436605775,
    -0.24984642432731538,
    -0.19594627437737705,
    0.12736934033579325,
    0.09305736460357235,
    -0.07139414716639708,
    -0.029457536821875813,
    0.033212674059341,
    0.0036065535669561697,
    -0.010733175483330575,
    0.001395351747052901,
    0.001992405295185056,
    -0.0006858566949597116,
    -0.00011646685512928545,
    9.358867032006959e-05,
    -1.3264202894521244e-05,
};
constexpr double k_sym2[] = {
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
};
constexpr double k_sym3[] = {
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
};
constexpr double k_sym4[] = {
    0.032223100604051466,
    -0.012603967262031304,
    -0.09921954357663353,
    0.29785779560530606,
    0.8037387518051321,
    0.497618667632775,
    -0.029635527646002493,
    -0.07576571478950221,
};
constexpr double k_sym5[] = {
    0.019538882735249827,
    -0.021101834024689042,
    -0.17532808990805623,
    0.01660210576451085,
    0.633978963456792,
    0.7234076904040407,
    0.19939753397685558,
    -0.039134249302313844,
    0.02951949092570626,
    0.027333068344998768,
};
constexpr double k_sym6[] = {
    -0.00780070832503238,
    0.0017677118642540077,
    0.04472490177078139,
    -0.02106029251237085,
    -0.07263752278637658,
    0.3379294217281658,
    0.787641141028651,
    0.49105594192797375,
    -0.04831174258569806,
    -0.11799011114852002,
    0.0034907120842221626,
    0.015404109327044824,
};
constexpr double k_sym7[] = {
    0.010268176708464817,
    0.0040102448715223955,
    -0.10780823770328972,
    -0.14004724044293365,
    0.2886296317506479,
    0.7677643170048829,
    0.5361019170905692,
    0.017441255086835708,
    -0.04955283493704283,
    0.06789269350122057,
    0.030515513165877885,
    -0.012636303403240567,
    -0.001047384888679738,
    0.002681814568260147,
};
constexpr double k_sym8[] = {
    0.001889950332767689,
    -0.0003029205147241331,
    -0.014952258337062199,
    0.0038087520138944896,
    0.04913717967373029,
    -0.027219029917103486,
    -0.0519458381078818,
    0.36444189483617895,
    0.777185751699628,
    0.4813596512590534,
    -0.061273359067811076,
    -0.14329423835127267,
    0.007607487324976609,
    0.03169508781152599,
    -0.0005421323318000107,
    -0.0033824159510050028,
};
constexpr double k_sym9[] = {
    0.001069490032908612,
    -0.00047315449868004354,
    -0.010264064027633121,
    0.008859267493400267,
    0.062077789302885746,
    -0.018233770779395506,
    -0.19155083129728434,
    0.03527248803527104,
    0.6173384491409342,
    0.7178970827644124,
    0.23876091460730517,
    -0.05456895843083335,
    0.0005834627461249819,
    0.030224878858275187,
    -0.011528210207679187,
    -0.013271967781817134,
    0.0006197808889855071,
    0.0014009155259146562,
};
constexpr double k_sym10[] = {
    -0.00045932942100465206,
    5.703608361849501e-05,
    0.004593173585311792,
    -0.0008043589320164513,
    -0.02035493981231111,
    0.00576491203358115,
    0.049994972077375154,
    -0.03199005688242811,
    -0.035536740473819585,
    0.3838267610670763,
    0.7695100370210979,
    0.4716906669384429,
    -0.07088053578323157,
    -0.1594942788849106,
    0.011609893903711319,
    0.04592723923109151,
    -0.0014653825813046104,
    -0.00864129927702215,
    9.563267072285273e-05,
    0.0007701598091144599,
};
constexpr double k_coif2[] = {
    0.01638733646320364,
    -0.04146493678687178,
    -0.0673725547237256,
    0.3861100668227629,
    0.8127236354494135,
    0.4170051844232391,
    -0.07648859907828076,
    -0.05943441864643109,
    0.02368017194684777,
    0.005611434819368834,
    -0.0018232088709110323,
    -0.000720549445520347,
};
constexpr double k_coif3[] = {
    -0.003793512864380802,
    0.007782596425672746,
    0.023452696142077168,
    -0.06577191128146936,
    -0.06112339000297255,
    0.40517690240911824,
    0.7937772226260872,
    0.42848347637737,
    -0.07179982161915484,
    -0.08230192710629983,
    0.03455502757329774,
    0.015880544863669452,
    -0.009007976136730624,
    -0.0025745176881367972,
    0.0011175187708306303,
    0.0004662169598204029,
    -7.0983302506379e-05,
    -3.459977319727278e-05,
};
constexpr double k_coif4[] = {
    0.000892313902537003,
    -0.001629492425226786,
    -0.007346167936268051,
    0.01606894713157503,
    0.02668230466960483,
    -0.08126671024919373,
    -0.05607731960356926,
    0.41530842700068227,
    0.7822389344242826,
    0.43438603311435653,
    -0.06662747236681717,
    -0.09622042453595264,
    0.03933442260558915,
    0.02508225333794961,
    -0.015211728187697211,
    -0.0056582838001308835,
    0.0037514346971460866,
    0.0012665610789256603,
    -0.0005890202246332165,
    -0.0002599743371222568,
    6.233885431278719e-05,
    3.1229861599195265e-05,
    -3.259647940030751e-06,
    -1.7849909144933469e-06,
};
constexpr double k_coif5[] = {
    -0.000212081862067494,
    0.0003585777411617577,
    0.0021782943778456947,
    -0.00415931262757864,
    -0.010131584846900276,
    0.023408322118927783,
    0.028169744270532353,
    -0.09192158806008609,
    -0.052046670253554764,
    0.42157126673075435,
    0.7742936228603274,
    0.4379823066591634,
    -0.06203775157498196,
    -0.10556315130733723,
    0.041287530472117834,
    0.032674799467057355,
    -0.019758391600965465,
    -0.009159507338676163,
    0.006761520220620417,
    0.0024315754425382886,
    -0.0016616273039298788,
    -0.0006375589261258812,
    0.0003018579416682448,
    0.00014035632812373243,
    -4.12198619242655e-05,
    -2.1270221672515614e-05,
    3.7007277113394796e-06,
    2.0612203985788783e-06,
    -1.6237995172048338e-07,
    -9.604010112767894e-08,
};
constexpr double k_coif6[] = {
    5.0775487836340565e-05,
    -8.117002626784841e-05,
    -0.0006246130439256836,
    0.0010916247123259031,
    0.0035390198715409982,
    -0.007029406391002729,
    -0.012231577790037914,
    0.029645772891323842,
    0.02878611434666557,
    -0.09967300204601176,
    -0.04876407217567388,
    0.42581954501283853,
    0.7684032575798925,
    0.4404011911268528,
    -0.0581089179726148,
    -0.11226080796481724,
    0.04185249067613627,
    0.03888132625151076,
    -0.022950153279849065,
    -0.012650067908732352,
    0.009591090175904054,
    0.0038576582705936867,
    -0.0030739395072085594,
    -0.0011574350134273348,
    0.0007698547307507267,
    0.0003252223590102408,
    -0.0001545771992797995,
    -7.528004306935965e-05,
    2.473655932872323e-05,
    1.3139851354021442e-05,
    -2.924385559757523e-06,
    -1.6596192951024209e-06,
    2.255997852816182e-07,
    1.3503244993561446e-07,
    -8.487143396262437e-09,
    -5.309088417196894e-09,
};
constexpr double k_coif7[] = {
    -1.2222250624065772e-05,
    1.871135500141218e-05,
    0.0001751021677848318,
    -0.0002872023753570612,
    -0.0011693144285797635,
    0.002105772041410548,
    0.004829446560702039,
    -0.00993889526908058,
    -0.0138025542362884,
    0.03491050510474272,
    0.02893704198352315,
    -0.1055561682215613,
    -0.0460333970384663,
    0.4288888072494226,
    0.7638153654167334,
    0.44213746140184257,
    -0.054751241648150456,
    -0.11729357104319278,
    0.04170535760257679,
    0.04399304616307942,
    -0.025154257568539024,
    -0.015946846819567942,
    0.012052338241841624,
    0.005431316442880096,
    -0.004617842130433119,
    -0.0018015372833330428,
    0.0014347418566524124,
    0.0005794994482340954,
    -0.00036906682873489536,
    -0.00016781721215484974,
    7.971050025993867e-05,
    4.04304824171402e-05,
    -1.4235636978451501e-05,
    -7.771243547311862e-06,
    2.0020780498554183e-06,
    1.1579769069489573e-06,
    -2.0693205243938526e-07,
    -1.2550913190794572e-07,
    1.3935103885216453e-08,
    8.796593384856987e-09,
    -4.578334067792951e-10,
    -2.990566231736866e-10,
};
constexpr double k_coif8[] = {
    2.9543365214148865e-06,
    -4.368264820320075e-06,
    -4.8296315214092946e-05,
    7.54736783816504e-05,
    0.0003712949956074124,
    -0.0006235604474579403,
    -0.001783260008597197,
    0.0033008250106161103,
    0.005994849192155886,
    -0.012742370632719796,
    -0.014978462081708435,
    0.03937203787797985,
    0.02882862175928801,
    -0.11016997698347017,
    -0.04371898336594559,
    0.43120981555508764,
    0.7601133020179406,
    0.44344254984152603,
    -0.05186074316118868,
    -0.12121116823149648,
    0.04118580667625654,
    0.04825237108568226,
    -0.026656710542648603,
    -0.01898524469525487,
    0.014117470077618783,
    0.007065827011035097,
    -0.006156659548258421,
    -0.0025440037102452736,
    0.002235649422048103,
    0.0008967760630796798,
    -0.0006871716433480045,
    -0.00029777893219564,
    0.00018169287648431021,
    8.754452091843062e-05,
    -4.147478606916182e-05,
    -2.1802000767010356e-05,
    8.031502995440787e-06,
    4.496936443579392e-06,
    -1.2754542996407565e-06,
    -7.515021558886325e-07,
    1.589351722153065e-07,
    9.772418508367799e-08,
    -1.454000853375353e-08,
    -9.271205591546297e-09,
    8.669995082338711e-10,
    5.704810333909736e-10,
    -2.5254234938854572e-11,
    -1.7079895947055486e-11,
};
constexpr double k_coif9[] = {
    -7.164920431247886e-07,
    1.0293200668945786e-06,
    1.315888564542533e-05,
    -1.978720443246248e-05,
    -0.00011443395278590283,
    0.00018228485966342262,
    0.000626473032139716,
    -0.001075458272741238,
    -0.0024212416736516485,
    0.004597056424920538,
    0.007022340460196238,
    -0.015376649629718764,
    -0.015860223894792906,
    0.04318172760825045,
    0.028572667556949285,
    -0.11388350819004509,
    -0.041726110205852804,
    0.4330267511031542,
    0.7570455233843789,
    0.44445789317644796,
    -0.04934886629362917,
    -0.12434558953929063,
    0.04047376745572896,
    0.05184461568624732,
    -0.027661239498680462,
    -0.021754553510948845,
    0.01581871581592506,
    0.008702757446229182,
    -0.007614042448258918,
    -0.0033576745265865788,
    0.003113227788384304,
    0.00126969092513534,
    -0.001095745627952607,
    -0.00046272908550530433,
    0.0003369138692848271,
    0.00015541352126673886,
    -9.135595508746477e-05,
    -4.613708198462493e-05,
    2.177639641002903e-05,
    1.1814409451578695e-05,
    -4.488111475152765e-06,
    -2.5723835744866874e-06,
    7.802480329370886e-07,
    4.679584769454299e-07,
    -1.1096670180879424e-07,
    -6.916547041218038e-08,
    1.2375256619810126e-08,
    7.97400588684683e-09,
    -1.0136275688170466e-09,
    -6.723464414885984e-10,
    5.4171009642830385e-11,
    3.686179736445179e-11,
    -1.416273550918584e-12,
    -9.858437261237078e-13,
};
constexpr double k_coif10[] = {
    1.7423674803127223e-07,
    -2.4427648648848456e-07,
    -3.551205538569571e-06,
    5.173962608452716e-06,
    3.4459693234170226e-05,
    -5.264472185921728e-05,
    -0.00021177413649420268,
    0.00034345502618015684,
    0.0009249399604237315,
    -0.001620778108853293,
    -0.003053992493811566,
    0.0059373732658958775,
    0.007917157067706418,
    -0.017820445781285547,
    -0.016521511268705533,
    0.046462747054700444,
    0.028232912738798778,
    -0.11693607050206899,
    -0.03998711301587224,
    0.43448818216271134,
    0.754450109494782,
    0.445269197719615,
    -0.04714526253802028,
    -0.12690910430554908,
    0.039668349279538065,
    0.05490896399592108,
    -0.028310063944428577,
    -0.024267328682795093,
    0.01720591249831959,
    0.010305378002449852,
    -0.008953207286543774,
    -0.004218113884810503,
    0.004020222790700274,
    0.0016899697926397446,
    -0.0015748582231923617,
    -0.0006598662532419506,
    0.0005451673708605962,
    0.0002436317307208456,
    -0.00016857983433223972,
    -8.202162255997293e-05,
    4.6724981354812776e-05,
    2.4541910121029197e-05,
    -1.1531058392150231e-05,
    -6.434329489073881e-06,
    2.4972027910054274e-06,
    1.4624450319782122e-06,
    -4.657624401004923e-07,
    -2.840907583862188e-07,
    7.315542758722409e-08,
    4.620903057304521e-08,
    -9.39633274741924e-09,
    -6.118910132543529e-09,
    9.4678306369391e-10,
    6.333121950019277e-10,
    -7.01292033330539e-11,
    -4.8040522124783065e-11,
    3.393464737916166e-12,
    2.374617931225516e-12,
    -8.044508599489871e-14,
    -5.737961266897435e-14,
};

const std::array<TapTable, 28> kTapTables = {{
    {"haar", k_haar},
    {"db2", k_db2},
    {"db3", k_db3},
    {"db4", k_db4},
    {"db5", k_db5},
    {"db6", k_db6},
    {"db7", k_db7},
    {"db8", k_db8},
    {"db9", k_db9},
    {"db10", k_db10},
    {"sym2", k_sym2},
    {"sym3", k_sym3},
    {"sym4", k_sym4},
    {"sym5", k_sym5},
    {"sym6", k_sym6},
    {"sym7", k_sym7},
    {"sym8", k_sym8},
    {"sym9", k_sym9},
    {"sym10", k_sym10},
    {"coif2", k_coif2},
    {"coif3", k_coif3},
    {"coif4", k_coif4},
    {"coif5", k_coif5},
    {"coif6", k_coif6},
    {"coif7", k_coif7},
    {"coif8", k_coif8},
    {"coif9", k_coif9},
    {"coif10", k_coif10},
}};

}  // namespace wavefprint::detail
