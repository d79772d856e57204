//! Algebra files survive serialize -> parse unchanged.

use proptest::prelude::*;

use leibniz_cli::format::AlgebraFile;
use leibniz_core::algebra::{Convention, StructureTensor};
use leibniz_core::exactla::{Field, Scalar, Vector};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5)),
        Just(Field::Prime(7)),
    ]
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    // mostly zero so that files stay sparse
    (0..3u8, -9i64..=9, 1i64..=4).prop_map(move |(zero, num, den)| {
        if zero > 0 {
            field.zero()
        } else if field == Field::Rationals {
            field.ratio(num, den).unwrap()
        } else {
            field.from_i64(num)
        }
    })
}

fn vector(field: Field, dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(scalar(field), dim).prop_map(move |v| Vector::new(field, v).unwrap())
}

fn file() -> impl Strategy<Value = AlgebraFile> {
    (field(), 1..=4usize)
        .prop_flat_map(|(f, n)| {
            (
                Just(f),
                Just(n),
                prop::collection::vec(vector(f, n), n * n),
                any::<bool>(),
                prop::option::of(prop::sample::select(vec!["a", "e", "g", "x"])),
                prop::option::of(prop::collection::vec(vector(f, n), 0..=n)),
                prop::collection::vec(("[a-z][a-z_.]{0,8}", "[a-z0-9]([a-z0-9 ,{}]{0,12}[a-z0-9}])?"), 0..3),
            )
        })
        .prop_map(|(f, n, products, left, prefix, ideal, meta)| {
            let convention = if left { Convention::Left } else { Convention::Right };
            let mut t = StructureTensor::zero(f, n).with_convention(convention);
            for (slot, v) in products.into_iter().enumerate() {
                t.set_product(slot / n, slot % n, v).unwrap();
            }
            if let Some(p) = prefix {
                t = t.with_basis_names((1..=n).map(|i| format!("{p}{i}")).collect()).unwrap();
            }
            let mut file = AlgebraFile::new(t);
            if let Some(gens) = ideal {
                file = file.with_ideal(gens);
            }
            let mut seen = std::collections::BTreeSet::new();
            file.meta = meta.into_iter().filter(|(k, _)| seen.insert(k.clone())).collect();
            file
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn serialize_then_parse(file in file()) {
        let text = file.serialize();
        let back = AlgebraFile::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.serialize(), text);
    }
}
