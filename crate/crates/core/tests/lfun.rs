//! Analytic checks against frozen values from `oracle/gen_values.py` (mpmath, 50 digits).
#![allow(clippy::excessive_precision)]

use cmhecke_core::arith::kronecker;
use cmhecke_core::characters::simplest_characters;
use cmhecke_core::field::build_field;
use cmhecke_core::lfun::{
    bound_report, central_derivative, central_value, eisenstein, g_odd, incgamma_f, partial_l_ideal, theta,
    vanishing_order, IdealClass,
};
use cmhecke_core::rootnum::{numeric_root_check, root_number};
use cmhecke_core::{CharacterSpec, Error, NumericsConfig, Sign};

const F_GRID: [(f64, f64); 100] = [
    (1.0e-6, 13238295.893062491244),
    (1.2284130588813377068e-6, 10609275.835125205209),
    (1.5089986432302048599e-6, 8500239.664852499758),
    (1.8536736391782043537e-6, 6808710.5836659884854),
    (2.2770769052705990914e-6, 5452343.1246733880349),
    (2.7971910065115066853e-6, 4364979.7100598931714),
    (3.4361059605841677466e-6, 3493477.6822553247916),
    (4.2209574336815947156e-6, 2795156.6243090991501),
    (5.1850792325167289081e-6, 2235744.9974474548707),
    (6.3694190405579738345e-6, 1787728.6651991789116),
    (7.8242775269088558353e-6, 1429022.8427528912057),
    (9.6114446903666156969e-6, 1141904.2937236292611),
    (0.000011806824172362046152, 912152.90908296683755),
    (0.000014503656997245379537, 728361.72107070431171),
    (0.000017816481656951914052, 581382.39323786853121),
    (0.000021885998730719544786, 463879.66109540104446),
    (0.000026885046647476270484, 369973.37825068742267),
    (0.000033025942390393778767, 294950.99391615951818),
    (0.000040569498914222459931, 235036.64554274276974),
    (0.000049836102258503120836, 187205.7532472346826),
    (0.000061219318818090961249, 149036.1781366341367),
    (0.00007520261069196295749, 118588.75729444686316),
    (0.000092379869035976609086, 94311.436835554135106),
    (0.00011348063750154140032, 74962.35772112984977),
    (0.0001394010970370727161, 59548.160651076431407),
    (0.00017124212802272467774, 47274.509567239820298),
    (0.00021035606629374485929, 37506.422935201360868),
    (0.00025840413885014458196, 29736.476070777848543),
    (0.00031742701863250402083, 23559.318919274550957),
    (0.0003899314949299376431, 18651.260058352447916),
    (0.00047899694044105752547, 14753.913910473245226),
    (0.00058840609680200140867, 11661.105993924754981),
    (0.00072280573323697505097, 9208.3899884529766925),
    (0.00088790400174260070843, 7264.6580670298019781),
    (0.0010907128707736087419, 5725.428483141244852),
    (0.0013398459339482539206, 4507.4767371704122077),
    (0.0016458842421510973553, 3544.5427442037673947),
    (0.0020218256964654218439, 2783.8994799487944596),
    (0.0024836370883199798614, 2183.611157090340934),
    (0.00305093223281428556, 1710.3431438754261968),
    (0.0037478049965510660886, 1337.6132378146982402),
    (0.0046038525999040564083, 1044.3958824061371496),
    (0.0056554326548869413319, 814.00853421800250976),
    (0.0069472073268870722929, 633.22351151209264509),
    (0.0085340402031041898702, 491.5599746159793012),
    (0.010483326430511530393, 380.7197572061826715),
    (0.012877855087756244431, 294.13803196065649707),
    (0.015819325360181245852, 226.62561124734413725),
    (0.019432665855139363587, 174.08434062576069481),
    (0.023871340505330671802, 133.28077024586261976),
    (0.029323866409751228349, 101.66627149507320214),
    (0.036021820434630216611, 77.234151670194800189),
    (0.044249674626578382104, 58.406226882902389368),
    (0.054356878162539065199, 43.942838131715865908),
    (0.066772698974884800475, 32.871513868537263511),
    (0.082024455397501000341, 24.430455662972091318),
    (0.10075991215792005481, 18.023800763456140608),
    (0.12377479190652546337, 13.18623575313767702),
    (0.15204657073829598587, 9.555030559160713942),
    (0.18677599305304786569, 6.8479569833614076722),
    (0.22943806895189401032, 4.8458708398646267041),
    (0.28184472010502339765, 3.3789878385394706201),
    (0.34622173475376625237, 2.3160834337727491547),
    (0.42530330024007714884, 1.556006250438216948),
    (0.52244812800024113989, 1.0210215785836427541),
    (0.64178210302360487845, 0.65160224895823607472),
    (0.78837351631052428187, 0.40236400084283947355),
    (0.96844832271204731765, 0.23890511049053142336),
    (1.1896545664712069228, 0.13535853968339503606),
    (1.4613872050110469925, 0.072501587312467864659),
    (1.7951871267176688079, 0.036295251211367674371),
    (2.2052313095956511485, 0.016745935556843186919),
    (2.7089349385612920762, 0.0069993665129485142747),
    (3.3276910541886054264, 0.0025949106702212188632),
    (4.0877791468878881032, 0.00083141874034859781806),
    (5.0214812858598957073, 0.00022298549082659890366),
    (6.1684531864785474466, 0.000048131030863920629142),
    (7.5774084473684471062, 7.9665206171298965565e-6),
    (9.308187489225161947, 9.5274872271102858498e-7),
    (11.434299066280079854, 7.6521901586590892188e-8),
    (14.046042292173136496, 3.7724495020480577697e-9),
    (17.254341777305038772, 1.0220142538328685115e-10),
    (21.195458761643339691, 1.328118829913174961e-12),
    (26.036778331783545035, 7.0046219501233316785e-15),
    (31.983918513961557658, 1.2209685239213126772e-17),
    (39.289463176746966136, 5.4650090734846771527e-21),
    (48.263689642753420541, 4.6064961431744020019e-25),
    (59.287746626954266418, 4.9955186284354914883e-30),
    (72.829842188198602291, 4.3645326197429076817e-36),
    (89.465129220250142653, 1.728641763552794882e-43),
    (109.90013304866162509, 1.5313803479493060448e-52),
    (135.00275860977242092, 1.2740300698063473338e-63),
    (165.83915166124938995, 3.4276930941800043591e-77),
    (203.71897957448144083, 8.0499276106337765158e-94),
    (250.25105485127350379, 3.3027127490580129246e-114),
    (307.4116637781343108, 3.2806821032844701618e-139),
    (377.62850223749929306, 6.9622596031855877421e-170),
    (463.88378355434458705, 1.599856282756875318e-207),
    (569.84089752144081338, 1.0208813644300796289e-253),
    (700.0, 2.009312523191475604e-310),
];

fn spec(disc: u64) -> CharacterSpec {
    CharacterSpec::simplest(&build_field(disc).unwrap(), Sign::Plus).unwrap()
}

fn four_exact_up_to(max: u64) -> impl Iterator<Item = u64> {
    (20..=max).filter(|d| d % 8 == 4).filter(|&d| build_field(d).is_ok())
}

#[test]
fn incgamma_matches_oracle_grid() {
    for (x, expect) in F_GRID {
        let got = incgamma_f(x);
        let rel = ((got - expect) / expect).abs();
        assert!(rel <= 1e-13, "x = {x}: {got} vs {expect} (rel {rel:e})");
    }
}

#[test]
fn theta_matches_oracle() {
    let cfg = NumericsConfig::with_target(1e-15);
    let cases = [
        (20u64, 0.5, 4.257_140_828_054_555_976_7),
        (20, 1.0, 2.680_431_215_438_923_749),
        (68, 0.5, 9.154_110_749_486_771_733_4),
        (68, 1.0, 5.944_057_162_582_742_42),
    ];
    for (disc, t, expect) in cases {
        let got = theta(t, &build_field(disc).unwrap(), &cfg).unwrap();
        assert!((got - expect).abs() < 1e-13, "D = {disc}, t = {t}: {got} vs {expect}");
    }
}

#[test]
fn theta_functional_equation_and_shape() {
    let cfg = NumericsConfig::with_target(1e-15);
    for disc in [20u64, 52, 68, 84, 148] {
        let f = build_field(disc).unwrap();
        for t in [1.0 / 3.0, 0.5, 1.0, 2.0, 3.0] {
            let lhs = theta(1.0 / t, &f, &cfg).unwrap();
            let rhs = t * theta(t, &f, &cfg).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "D = {disc}, t = {t}: {lhs} vs {rhs}");
        }
        let grid: Vec<f64> = (0..40).map(|k| theta(0.1 + 0.1 * k as f64, &f, &cfg).unwrap()).collect();
        assert!(grid.windows(2).all(|w| w[1] < w[0]), "θ is decreasing, D = {disc}");
        for k in 0..=16 {
            let t = 0.25 * libm::pow(16.0, k as f64 / 16.0);
            assert!(theta(t, &f, &cfg).unwrap() - theta(2.0 * t, &f, &cfg).unwrap() > 0.0);
        }
        assert!((theta(200.0, &f, &cfg).unwrap() - f.h as f64).abs() < 1e-10);
    }
}

#[test]
fn eisenstein_at_one_is_theta() {
    let cfg = NumericsConfig::with_target(1e-14);
    for disc in [20u64, 52, 68] {
        let f = build_field(disc).unwrap();
        let sd = f.sqrt_disc();
        for t in [0.5, 1.0, 1.5] {
            let g = eisenstein(t / sd, 1.0, &f, &cfg).unwrap();
            assert!((sd / core::f64::consts::PI * g - theta(t, &f, &cfg).unwrap()).abs() < 1e-12);
            let go = g_odd(t / sd, 1.0, &f, &cfg).unwrap();
            assert!(go > 0.0);
        }
    }
}

#[test]
fn g_odd_is_a_difference_of_eisenstein_sums() {
    let cfg = NumericsConfig::with_target(1e-12);
    for disc in [20u64, 52] {
        let f = build_field(disc).unwrap();
        for t in [0.2, 0.5, 1.0] {
            let direct = g_odd(t, 3.0, &f, &cfg).unwrap();
            let diff = eisenstein(t, 3.0, &f, &cfg).unwrap() - eisenstein(2.0 * t, 3.0, &f, &cfg).unwrap();
            assert!((direct - diff).abs() < 1e-10, "D = {disc}, t = {t}");
        }
    }
}

#[test]
fn partial_sums_match_eisenstein_forms() {
    let cfg = NumericsConfig::with_target(1e-9);
    for disc in [20u64, 52, 68] {
        let f = build_field(disc).unwrap();
        let sd = f.sqrt_disc();
        for spec in simplest_characters(&f).unwrap() {
            let w = f64::from(root_number(&spec).unwrap());
            let principal = partial_l_ideal(3.0, IdealClass::Principal, &spec, &cfg).unwrap();
            let expect =
                4.0 * eisenstein(2.0 / sd, 3.0, &f, &cfg).unwrap() - 2.0 * eisenstein(1.0 / sd, 3.0, &f, &cfg).unwrap();
            assert!((principal - expect).abs() < 1e-7, "D = {disc}: {principal} vs {expect}");
            let p2 = partial_l_ideal(3.0, IdealClass::P2, &spec, &cfg).unwrap();
            let expect = 8.0 * w * g_odd(0.5 / sd, 3.0, &f, &cfg).unwrap();
            assert!((p2 - expect).abs() < 1e-7, "D = {disc}: {p2} vs {expect}");
        }
        let [a, b] = <[CharacterSpec; 2]>::try_from(simplest_characters(&f).unwrap()).unwrap();
        for cls in [IdealClass::Principal, IdealClass::P2] {
            let x = partial_l_ideal(3.0, cls, &a, &cfg).unwrap();
            let y = partial_l_ideal(3.0, cls, &b, &cfg).unwrap();
            assert!((x - y).abs() < 1e-12, "{cls:?}");
        }
    }
}

#[test]
fn numeric_root_numbers_match_closed_form() {
    let cfg = NumericsConfig::with_target(1e-8);
    for disc in four_exact_up_to(200) {
        let s = spec(disc);
        let w = root_number(&s).unwrap();
        assert_eq!(w, kronecker(2, disc as i64 / 4));
        assert_eq!(numeric_root_check(&s, 3.0, &cfg), Ok(w), "D = {disc}");
    }
    assert!(matches!(numeric_root_check(&spec(20), 2.0, &cfg), Err(Error::Domain(_))));
}

#[test]
fn central_values() {
    let cfg = NumericsConfig::with_target(1e-14);
    assert_eq!(central_value(&spec(20), &cfg), Ok(0.0));
    assert_eq!(central_value(&spec(52), &cfg), Ok(0.0));
    let v = central_value(&spec(68), &cfg).unwrap();
    assert!((v - 4.891_788_705_867_330_748_7).abs() < 1e-12, "{v}");
}

#[test]
fn derivative_terms_match_oracle() {
    let cfg = NumericsConfig::with_target(1e-13);
    let cases = [
        (
            20u64,
            5.194_469_776_383_634_365,
            -0.000_933_066_890_535_535_805_16,
            1.553_553_610_764_433_165_5,
            14.559_932_394_914_662_655,
        ),
        (
            52,
            21.642_686_868_690_938_278,
            0.000_397_047_144_189_126_660_03,
            -0.413_044_833_158_874_063_41,
            88.224_514_995_976_005_872,
        ),
    ];
    for (disc, r, c1, c2, lp) in cases {
        for s in simplest_characters(&build_field(disc).unwrap()).unwrap() {
            let t = central_derivative(&s, &cfg).unwrap();
            assert!((t.r - r).abs() < 1e-11, "D = {disc} R {}", t.r);
            assert!((t.c1 - c1).abs() < 1e-13, "D = {disc} C1 {}", t.c1);
            assert!((t.c2 - c2).abs() < 1e-11, "D = {disc} C2 {}", t.c2);
            assert!((t.lambda_prime1 - lp).abs() < 1e-10, "D = {disc} Λ' {}", t.lambda_prime1);
        }
    }
    // |C₁|/R at D = 20 sits just above 1e-4 (see the oracle values above).
    let ratio: f64 = 0.000_933_066_890_535_535_805_16 / 5.194_469_776_383_634_365;
    assert!((ratio - 1.796_26e-4).abs() < 1e-8);
}

#[test]
fn derivative_positivity_ledger() {
    let cfg = NumericsConfig::default();
    for disc in four_exact_up_to(400) {
        let s = spec(disc);
        if root_number(&s).unwrap() != -1 {
            assert_eq!(central_derivative(&s, &cfg), Err(Error::WrongSign(1)));
            continue;
        }
        let t = central_derivative(&s, &cfg).unwrap();
        assert!(t.r > 0.0 && t.lambda_prime1 > 0.0, "D = {disc}");
        if disc >= 52 {
            assert!(t.c1.abs() / t.r < 1e-4, "D = {disc}: {}", t.c1.abs() / t.r);
        }
        let b = bound_report(&build_field(disc).unwrap(), &t);
        assert!(b.r_ok && b.c2_ok, "D = {disc}");
        assert_eq!(b.final_ok.is_none(), disc == 20);
    }
}

#[test]
fn vanishing_order_law() {
    let cfg = NumericsConfig::default();
    for disc in four_exact_up_to(200) {
        for s in simplest_characters(&build_field(disc).unwrap()).unwrap() {
            let r = vanishing_order(&s, &cfg).unwrap();
            assert_eq!(r.ord as i32, (1 - r.w) / 2);
            if r.w == 1 {
                assert!(r.l1 > 1e-6 && r.lambda_prime1().is_none() && r.bounds.is_none());
            } else {
                assert_eq!(r.l1, 0.0);
                assert!(r.lambda_prime1().unwrap() > 1e-6);
            }
        }
    }
}

#[test]
fn bit_reproducible() {
    let cfg = NumericsConfig::with_target(1e-8);
    let s = spec(52);
    let a = partial_l_ideal(3.0, IdealClass::P2, &s, &cfg).unwrap();
    let b = partial_l_ideal(3.0, IdealClass::P2, &s, &cfg).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
    let x = central_derivative(&s, &cfg).unwrap();
    let y = central_derivative(&s, &cfg).unwrap();
    assert_eq!(x.lambda_prime1.to_bits(), y.lambda_prime1.to_bits());
}
