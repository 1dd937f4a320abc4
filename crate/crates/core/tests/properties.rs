mod common;

const CASES: u32 = 1000;

macro_rules! property {
    ($name:ident) => {
        #[test]
        fn $name() {
            if let Err(e) = common::$name(CASES) {
                panic!("{e}");
            }
        }
    };
}

property!(ring_axioms);
property!(partials_commute);
property!(leibniz);
property!(euler);
property!(adjugate_round_trip);
property!(divide_round_trip);
property!(denominator_reduction);
