/*!
Identifying codes in graphs.

An identifying code of a graph `G` is a vertex set `C` such that the sets
`N[v] ∩ C` are non-empty and pairwise distinct over all vertices `v`. This
crate provides:

* [`codecheck`]: verification predicates and violation listings;
* [`exact`]: a branch-and-bound solver for minimum codes, closed forms for
  paths and cycles, and codes for cycles with one chord;
* [`bondy`]: the greedy `(X, Y)`-separating and `(X, Y)`-identifying sets;
* [`families`]: the exceptional graphs with their codes and random
  triangle-free instance generators;
* [`constructor`]: a certified builder of codes of size at most
  `((Δ-1)/Δ)·n` for connected triangle-free graphs, and its extension to
  graphs made triangle-free by deleting `t` edges;
* [`cli`]: the command-line front end used by the `idcode` binary.

# Examples

```
use idcode::constructor::construct_triangle_free;
use idcode::families::{make_standard, StandardGraph};

let k33 = make_standard(StandardGraph::CompleteBipartite(3, 3));
let cert = construct_triangle_free(&k33, &Default::default()).unwrap();
assert!(cert.verified);
assert!(3 * cert.code.len() <= 2 * 6);
```
*/

pub mod bondy;
pub mod cli;
pub mod codecheck;
pub mod constructor;
pub mod edgelist;
pub mod enumerate;
pub mod exact;
pub mod families;
pub mod graph;
pub mod iso;
pub mod vertex_set;

pub use edgelist::{parse_edge_list, write_edge_list, ParseError};
pub use graph::{BoundaryDecomposition, Graph, GraphError, IdMap};
pub use vertex_set::VertexSet;
