use coxtori::quotient::{catalog, fingerprint, has_subnormal_chain, identify, lookup};

#[test]
fn every_catalog_entry_round_trips() {
    for e in catalog() {
        let g = (e.build)();
        assert_eq!(identify(&g).name, e.name);
    }
}

#[test]
fn catalog_fingerprints_are_distinct() {
    let fps: Vec<_> = catalog().iter().map(|e| fingerprint(&(e.build)()).unwrap()).collect();
    for i in 0..fps.len() {
        for j in i + 1..fps.len() {
            assert_ne!(fps[i], fps[j], "{} vs {}", catalog()[i].name, catalog()[j].name);
        }
    }
}

#[test]
fn extension_chains_have_the_named_shape() {
    let bottom = (lookup("2 x D_8").unwrap().build)();
    let g192 = (lookup("(((2 x D_8):2):3):2").unwrap().build)();
    assert!(has_subnormal_chain(&g192, &[16, 2, 3, 2], &bottom));
    let g384 = (lookup("((((2 x D_8):2):3):2):2").unwrap().build)();
    assert!(has_subnormal_chain(&g384, &[16, 2, 3, 2, 2], &bottom));
    // The chain shape alone does not pin the group: S_4 × D_8 has one too.
    let other = (lookup("S_4 x D_8").unwrap().build)();
    assert!(has_subnormal_chain(&other, &[16, 2, 3, 2], &bottom));
    assert!(!has_subnormal_chain(&g192, &[16, 3, 2, 2], &bottom));
}
