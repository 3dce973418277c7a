// Generated by gen_frozen.py (mpmath, 40 digits). Do not edit.
#pragma once

namespace frozen {

// nu, x, J, Y, J', Y'
inline constexpr double bessel[][6] = {
    {0.0, 2.0, 0.2238907791412356680518275, 0.5103756726497451195966066, -0.5767248077568733872024482, 0.1070324315409375468883708},
    {0.5, 1.570796326794896619231322, 0.6366197723675813430755351, -1.315913509161586527555433e-43, -0.2026423672846755428877589, 0.6366197723675813430755351},
    {10.0, 30.0, -0.1298768939985887681859474, 0.07505670212239711328867641, -0.06835110313735413306350469, -0.1238900176591579383547424},
    {0.5, 1.0, 0.671396707141803090416364, -0.431098868018376079520521, 0.09540051444747453431233896, 0.8869461411509911301766245},
    {3.700000000000000177635684, 0.2000000000000000111022302, 1.290238929299565471967076e-5, -6678.275352416935722400476, 0.0002384195804634954897380255, 1.233002057191527655871595e+5},
    {40.0, 35.0, 0.01496563261705104352125348, -1.126666790758451094552907, 0.008854527817325561598052913, 0.5487929661172058313236784},
    {2.5, 150.0, 0.04565476442015942328452827, 0.0464794606381889678706854, -0.04662548651237020974117993, 0.04549370426230097897173254},
    {25.0, 26.0, 0.1966155261183803144826841, -0.1784698875266769007692126, 0.03809008883361337968263195, 0.08995953849354724941786976},
    {60.0, 90.0, -0.0967023666266750457742355, -0.01168163330578713153949175, 0.009675090710189756662570804, -0.07197892261831939466243998},
    {1.0, 0.001, 0.0004999999375000026041666124, -636.6221672311394280743732, 0.4999998125000130208329536, 6.366176958145280521511042e+5},
};
// nu, x, log|J'|, log|Y'|, J'/Y'
inline constexpr double bessel_log[][5] = {
    {100, 50, -47.693403075663037585619, 43.1859211142886875504623, 3.40103409106379449578958e-40},
    {200, 100, -93.13329333940795168522271, 87.93269061378375041759056, 2.312290041315595433157517e-79},
    {30, 10, -26.15021717903782020912189, 23.74252744222560514805572, 2.147120032912316245694187e-22},
};
// t, Ai, Ai', Bi, Bi'
inline constexpr double airy[][5] = {
    {-20.5, -0.04462568039701190981636757, -1.183933019705147497002824, 0.2613621378692302921142054, -0.1988680280216859810908254},
    {-3.0, -0.3788142936776580743472439, 0.3145837692165988136507873, -0.1982896263749265432206449, -0.675611222685258537668032},
    {0.0, 0.3550280538878172392600632, -0.2588194037928067984051836, 0.6149266274460007351509224, 0.4482883573538263579148237},
    {1.7, 0.05432479273291946775197641, -0.07737488952532502808189066, 2.319407506938924947258368, 2.555849356900438016119445},
    {8.0, 4.692207616099231625649082e-8, -1.341439297906786574291154e-7, 1.199586004124459930881654e+6, 3.354342312744538876507746e+6},
};
// nu, re z, im z, re J, im J, re Y, im Y
inline constexpr double complex_bessel[][7] = {
    {2, 3.0, 4.0, 7.000136899130741108008585, 1.412377588110529598831821, -1.420500883899751482762127, 6.996967023435782244719661},
    {0, 1.0, 2.0, 1.586259450202371272377863, -1.391602452327335923396791, 1.367418716811797870340977, 1.521506576945447807137181},
    {1.3, -2.0, 5.0, -16.01540299071886645487567, -15.54493915428814884547896, 15.54604166666066559142029, -16.01775902136211114527104},
    {0, 0.0, 1.0, 1.266065877752008335598245, 0.0, -0.2680324820339885487627693, 1.266065877752008335598245},
    {3, 7.0, -1.0, -0.2580798087578049711819465, 0.2587793501962884542181215, 0.3715934259308841953971248, 0.2019754968726722729787421},
};
// nu, delta, x, j, y, j', y' (ultraspherical)
inline constexpr double ultraspherical[][7] = {
    {1.5, 0.5, 5.0, -0.07587037060225362371764888, 0.1439689876159726038747949, -0.1226740265056594434151757, -0.1028535306993304866871198},
    {0.5, 0.5, 3.141592653589793238462643, 1.04986470085994914235552e-43, 0.2539745437369638791430532, -0.2539745437369638791430532, -0.08084260811049313830305775},
    {7.0, 1.0, 3.299999999999999822364316, 0.00141487533495732071302525, -3.366936498702672987234861, 0.002268832348389556672124134, 7.121383008038049175863106},
};
// (r, R) = (1, 2): nu, delta, x, f, g, ht
inline constexpr double cross[][6] = {
    {0.0, 0.0, 3.0, -0.01817492425833700446116489, -0.03049334741698476465236519, -0.03049334741698476465236519},
    {2.5, 0.5, 7.299999999999999822364316, -0.04636866820839290391564007, -0.04141552050075719828705658, -0.04020867930148019178294242},
    {12.25, 1.0, 20.0, 0.01914955984116037686834487, 0.01493164736459253759384729, 0.01547245377787316536932974},
    {0.699999999999999955591079, 0.5, 0.9000000000000000222044605, -0.3997460724852343112435777, -0.3146075812073719809353733, -0.4112698483229910638920856},
    {4.0, 0.5, 11.5, 0.0401818655620044200022538, 0.03740352833280673996114256, 0.03766750263900692068238826},
};
// (r, R) = (1, 2), evanescent: nu, delta, x, log|f|, sign f, log|ht|, sign ht
inline constexpr double cross_log[][7] = {
    {50.0, 0.5, 40.0, -0.4841506205205283757688739, 1.0, -0.1713203782764864914679207, 1.0},
    {120.0, 0.5, 80.0, 20.87004155471030450223779, -1.0, 20.02382952887145424995578, 1.0},
};
// (r, R) = (1, 2), complex: nu, delta, re z, im z, re ht, im ht
inline constexpr double complex_ht[][6] = {
    {0.699999999999999955591079, 0.5, 3.0, 1.5, 0.05987956583450059504255967, 0.3148938542497728752020759},
    {2.0, 0.5, 13.0, 2.0, -0.0591963609480100713688685, -0.1117438054097128220351273},
    {6.0, 0.0, 20.0, 5.0, -1.436649819486843735261403, -1.038560204053909267003761},
    {3.5, 1.0, 9.0, -4.0, -0.5341129136316006502748092, -1.353505824327034055690794},
    {10.5, 0.5, 14.0, 0.5, 0.02232592344719740481629483, -0.0117019377793915509935578},
};
// first zeros on (r, R) = (1, 2): f_0, f_3.5, g_0 (k >= 1), ht_{2.5, 0.5} (k >= 0), ht_{0.5, 0.5} (k >= 1)
inline constexpr double zeros_f0[][5] = {
    {3.123030919595692205078466, 6.273435713992180653201778, 9.418207542251576959760625, 12.56142318552536311093628, 15.70399789274403760469678},
};
inline constexpr double zeros_f35[][5] = {
    {3.922519910953716263102603, 6.735564717916729743676319, 9.735534415647813747304097, 12.80190331844216914079451, 15.89730831254539871737376},
};
inline constexpr double zeros_g0[][5] = {
    {3.196578380810635005395254, 6.312349510373263126551457, 9.444464925482272759005622, 12.5812028101041084307755, 15.71985426942973884548953},
};
inline constexpr double zeros_h25[][5] = {
    {1.575588028358266175514209, 3.776809400947290633183739, 6.604350864776391905187593, 9.638005801113032992789312, 12.72598023132646021266809},
};
inline constexpr double zeros_h05[][5] = {
    {3.286006599508175527401862, 6.36067817370900857795536, 9.477196047926253603988555, 12.60588961811828072094528, 15.73965556392239720180121},
};
// unit ball: zeros of j'_{3.5, 0.5} (k >= 0) and of J_{2.5}
inline constexpr double zeros_ball_jp[][5] = {
    {4.51409964703228167718384, 8.583754956365766741481776, 11.97273003219252630911122, 15.24451382437144353581952, 18.46814777691615906186702},
};
inline constexpr double zeros_ball_j[][5] = {
    {5.763459196894549791406467, 9.095011330476355156337698, 12.32294097056658205196957, 15.51460301088674823044143, 18.68903635536282220199817},
};
// theta*
inline constexpr double theta_star = 0.3144831759740614067358072;
// (r, R) = (1, 2): G(0.3), G(1.5), H(0.1), F(5, 3.2)
inline constexpr double G_03 = 0.3110509812350595639071057;
inline constexpr double G_15 = 0.07600421510386856202019513;
inline constexpr double H_01 = 1.400714404857263050791887;
inline constexpr double F_5_32 = 10.65975801785289477829429;

}  // namespace frozen
