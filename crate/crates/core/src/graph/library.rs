use super::constructors::*;
use super::ops::complement;
use super::ColoredGraph;

/// Names accepted by [`named_graph`] besides the parameterized families
/// `point`, `edgeless-N`, `complete-N`, `ngon-N`, `oriented-N`, `simplex-A-B-…`.
pub const NAMED_GRAPHS: &[&str] = &[
    "segment",
    "triangle",
    "square",
    "pentagon",
    "hexagon",
    "heptagon",
    "heptagon-complement",
    "octagon",
    "cube",
    "wheel8",
    "star9-1",
    "star9-2",
    "torus3",
    "two-segments",
    "two-triangles",
    "two-squares",
    "two-tetrahedra",
    "three-triangles",
    "three-segments",
    "four-segments",
];

fn family(name: &str) -> Option<ColoredGraph> {
    let (head, tail) = name.split_once('-')?;
    let num = || tail.parse::<usize>().ok().filter(|&k| k >= 1);
    match head {
        "edgeless" => num().map(edgeless),
        "complete" => num().map(complete),
        "ngon" => num().map(n_gon),
        "oriented" => num().and_then(|k| oriented_n_gon(k).ok()),
        "simplex" => {
            let idx: Option<Vec<usize>> = tail.split('-').map(|s| s.parse().ok()).collect();
            multi_simplex(&idx?).ok()
        }
        _ => None,
    }
}

/// Graph by name; see [`NAMED_GRAPHS`].
pub fn named_graph(name: &str) -> Option<ColoredGraph> {
    let g = match name {
        "point" => edgeless(1),
        "segment" => complete(2),
        "triangle" => complete(3),
        "square" => n_gon(4),
        "pentagon" => n_gon(5),
        "hexagon" => n_gon(6),
        "heptagon" => n_gon(7),
        "heptagon-complement" => complement(&n_gon(7)).ok()?,
        "octagon" => n_gon(8),
        "cube" => cube(),
        "wheel8" => eight_spoke_wheel(),
        "star9-1" => nine_star(1).ok()?,
        "star9-2" => nine_star(2).ok()?,
        "torus3" => discrete_torus(3),
        "two-segments" => disjoint_copies(2, &complete(2)),
        "two-triangles" => disjoint_copies(2, &complete(3)),
        "two-squares" => disjoint_copies(2, &n_gon(4)),
        "two-tetrahedra" => disjoint_copies(2, &complete(4)),
        "three-triangles" => disjoint_copies(3, &complete(3)),
        "three-segments" => disjoint_copies(3, &complete(2)),
        "four-segments" => disjoint_copies(4, &complete(2)),
        _ => return family(name),
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_resolves() {
        for name in NAMED_GRAPHS {
            assert!(named_graph(name).is_some(), "{name}");
        }
        assert_eq!(named_graph("simplex-2-2-2").unwrap().n, 8);
        assert_eq!(named_graph("oriented-5").unwrap().n, 5);
        assert!(named_graph("oriented-2").is_none());
        assert!(named_graph("nonsense").is_none());
    }
}
