#pragma once

// Generated by generate_oracles.py (mpmath, 40 digits). Do not edit.

namespace oracle {

inline constexpr double kIncBeta_03_2_5 = 0.579825;
inline constexpr double kIncBeta_09_05_3 = 0.99967502532072891633;
inline constexpr double kIncBeta_097_150_25 = 0.10197453165427326656;
inline constexpr double kHyp2F1_07_32_41_m50 = 0.079305188239404096845;
inline constexpr double kHyp2F1_1_1_2_05 = 1.3862943611198906188;
inline constexpr double kHyp2F1_15_25_35_m3000 = 0.000015155738679899061156;
inline constexpr double kHyp2F1_03_m07_13_09 = 0.83785904497339598658;
inline constexpr double kAppell_12_04_20_30_06_m2 = 0.41917135824638635958;
inline constexpr double kAppell_2_m05_3_35_03_m40 = 0.0010239401614631284273;
inline constexpr double kAppell_15_05_25_3_04_03 = 1.7729098532857457942;
inline constexpr double kGammaP_25_3 = 0.69378108158672159912;
inline constexpr double kGammaQ_25_3 = 0.30621891841327840088;

// Evaluation grid shared by the GB, mGB and tilde-mGB tables below.
inline constexpr double kGrid[] = {
    1,
    3,
    10,
    20,
    27.4,
    50,
    100,
    200,
    350,
    398};
// GB at (1.5457, 398.8160, 27.4217, 0.6648, 2.7871).
inline constexpr double kGbPdf[] = {
    7.1314549747764080808e-2,
    6.7097787936231066837e-2,
    3.9905714387985379827e-2,
    1.4887432662503730591e-2,
    7.0987164745589064097e-3,
    9.6811570174057188676e-4,
    4.2817245292281689157e-5,
    8.4355162994466463515e-7,
    4.8221530084183779741e-9,
    1.7504783058636401262e-12};
inline constexpr double kGbCdf[] = {
    7.0272462626443628758e-2,
    2.0958732945420523485e-1,
    5.8494323374795320757e-1,
    8.4085407762355086708e-1,
    9.1850825041355597311e-1,
    9.8563764242080389315e-1,
    9.9903008402018190146e-1,
    9.9997361449205353179e-1,
    9.9999992817260809246e-1,
    9.9999999999948881047e-1};
inline constexpr double kGbCcdf[] = {
    9.2972753737355637124e-1,
    7.9041267054579476515e-1,
    4.1505676625204679243e-1,
    1.5914592237644913292e-1,
    8.1491749586444026892e-2,
    1.4362357579196106855e-2,
    9.6991597981809853533e-4,
    2.6385507946468212708e-5,
    7.1827391907537440061e-8,
    5.111895338600330815e-13};
// mGB at (1.5500, 399.9009, 27.4233, 0.6519, 1.7828).
inline constexpr double kMgbPdf[] = {
    7.2868288449023961442e-2,
    6.7391191256077549858e-2,
    3.9546270245499432292e-2,
    1.473732470006213871e-2,
    7.0473132351318601557e-3,
    9.7921517353783474645e-4,
    4.6810692120240924642e-5,
    1.2367428936370848267e-6,
    2.5758056697287463392e-8,
    1.0476462563167076851e-9};
inline constexpr double kMgbCdf[] = {
    7.3006577824889675999e-2,
    2.1390787817492097927e-1,
    5.8780311885592157984e-1,
    8.4111644954593069963e-1,
    9.1807098254006686874e-1,
    9.8507467312448807304e-1,
    9.9886363650953578808e-1,
    9.9995359632956052822e-1,
    9.9999942950743703743e-1,
    9.9999999889249674152e-1};
inline constexpr double kMgbCcdf[] = {
    9.26993422175110324e-1,
    7.8609212182507902073e-1,
    4.1219688114407842016e-1,
    1.5888355045406930037e-1,
    8.1929017459933131256e-2,
    1.4925326875511926962e-2,
    1.1363634904642119188e-3,
    4.6403670439471783985e-5,
    5.7049256296257281332e-7,
    1.1075032584758307456e-9};
// tilde-mGB at the same parameters as the mGB table (cdf by quadrature).
inline constexpr double kTildePdf[] = {
    7.3012948190973687236e-2,
    6.7515005977065182846e-2,
    3.9579795803519722873e-2,
    1.4716455662434194203e-2,
    7.0220331166715398822e-3,
    9.6713635502192593943e-4,
    4.4885113175318852052e-5,
    1.0684114413836579073e-6,
    1.4227166524683417456e-8,
    1.8371208261280599833e-10};
inline constexpr double kTildeCdf[] = {
    7.3152972873731608395e-2,
    2.1432469126747640466e-1,
    5.8875728841864599409e-1,
    8.4206289142241366266e-1,
    9.188375420003899391e-1,
    9.8541533851499346488e-1,
    9.9893838745283093952e-1,
    9.9996261521150196207e-1,
    9.9999972941671142534e-1,
    9.999999998378483607e-1};
inline constexpr double kTildeCcdf[] = {
    9.2684702712626839161e-1,
    7.8567530873252359534e-1,
    4.1124271158135400591e-1,
    1.5793710857758633734e-1,
    8.1162457999610060899e-2,
    1.4584661485006535121e-2,
    1.0616125471690604808e-3,
    3.7384788498037928715e-5,
    2.7058328857466031638e-7,
    1.6215163929749768564e-10};

}  // namespace oracle
