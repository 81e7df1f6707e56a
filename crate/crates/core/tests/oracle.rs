mod support;

use support::naive;

use kstar_core::{description_count, BitString, DescriptionTable, Program};

fn as_naive(t: &DescriptionTable) -> Vec<(String, naive::Entry)> {
    t.sorted()
        .into_iter()
        .map(|d| {
            (
                d.artefact.to_string(),
                (d.k, d.program.to_string(), d.input.to_string()),
            )
        })
        .collect()
}

#[test]
fn interpreter_agrees_with_vm() {
    for plen in (0..=12).step_by(3) {
        for raw in BitString::enumerate(plen).unwrap() {
            let p = Program::decode(&raw).unwrap();
            for ilen in 0..=4 {
                for input in BitString::enumerate(ilen).unwrap() {
                    let ours = p
                        .admissible(&input)
                        .then(|| p.execute(&input).result.unwrap().to_string());
                    assert_eq!(
                        ours,
                        naive::run(&raw.to_string(), &input.to_string()),
                        "{raw} on {input}"
                    );
                }
            }
        }
    }
}

#[test]
fn tables_match_reference_up_to_14() {
    for cap in 0..=14 {
        let table = DescriptionTable::build(cap).unwrap();
        let reference: Vec<_> = {
            let mut v: Vec<_> = naive::table(cap).into_iter().collect();
            v.sort_by(|a, b| (a.1 .0, &a.0).cmp(&(b.1 .0, &b.0)));
            v
        };
        assert_eq!(as_naive(&table), reference, "cap {cap}");
    }
}

#[test]
fn pair_counts_match_reference() {
    for budget in 0..=12 {
        assert_eq!(
            description_count(budget).unwrap(),
            naive::pair_count(budget),
            "budget {budget}"
        );
    }
}
