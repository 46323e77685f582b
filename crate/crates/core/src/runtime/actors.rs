use std::sync::Arc;

use rayon::prelude::*;

use crate::detection::{
    choose_preferred, with_pool, Assignment, CandidateList, DetectionParams, NeighbourInfo,
    ParamError,
};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MessageKind {
    DegreeAnnounce(usize),
    ListAnnounce(Arc<[VertexId]>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub sender: VertexId,
    pub kind: MessageKind,
}

/// A vertex in the protocol. It knows the ids of its neighbours (who it can
/// talk to) and nothing else until messages arrive.
#[derive(Debug)]
pub struct VertexActor {
    id: VertexId,
    neighbours: Vec<VertexId>,
    inbox: Vec<Message>,
    neighbour_degrees: Vec<(VertexId, usize)>,
    neighbour_lists: Vec<CandidateList>,
    candidates: Option<CandidateList>,
    preferred: Option<(VertexId, crate::detection::Provenance)>,
    sent_degree: bool,
    sent_list: bool,
}

impl VertexActor {
    fn new(id: VertexId, neighbours: Vec<VertexId>) -> Self {
        VertexActor {
            id,
            neighbours,
            inbox: Vec::new(),
            neighbour_degrees: Vec::new(),
            neighbour_lists: Vec::new(),
            candidates: None,
            preferred: None,
            sent_degree: false,
            sent_list: false,
        }
    }

    pub fn id(&self) -> VertexId {
        self.id
    }

    pub fn candidates(&self) -> Option<&CandidateList> {
        self.candidates.as_ref()
    }

    fn degree(&self) -> usize {
        self.neighbours.len()
    }

    fn broadcast(&self, kind: MessageKind) -> Vec<(VertexId, Message)> {
        self.neighbours
            .iter()
            .map(|&to| {
                let msg = Message {
                    sender: self.id,
                    kind: kind.clone(),
                };
                (to, msg)
            })
            .collect()
    }

    fn announce_degree(&mut self) -> Vec<(VertexId, Message)> {
        assert!(
            !self.sent_degree,
            "vertex {} announced its degree twice",
            self.id
        );
        self.sent_degree = true;
        self.broadcast(MessageKind::DegreeAnnounce(self.degree()))
    }

    fn receive_degrees(&mut self, params: &DetectionParams) {
        for msg in self.inbox.drain(..) {
            if let MessageKind::DegreeAnnounce(d) = msg.kind {
                self.neighbour_degrees.push((msg.sender, d));
            }
        }
        self.neighbour_degrees.sort_unstable();
        let k = params.k_rule.k(self.degree());
        self.candidates = Some(CandidateList::from_neighbour_degrees(
            self.id,
            &self.neighbour_degrees,
            k,
        ));
    }

    fn announce_list(&mut self) -> Vec<(VertexId, Message)> {
        assert!(
            !self.sent_list,
            "vertex {} announced its list twice",
            self.id
        );
        self.sent_list = true;
        let members: Arc<[VertexId]> = self
            .candidates
            .as_ref()
            .expect("degree round completed")
            .members()
            .into();
        self.broadcast(MessageKind::ListAnnounce(members))
    }

    fn receive_lists(&mut self, params: &DetectionParams) {
        for msg in self.inbox.drain(..) {
            if let MessageKind::ListAnnounce(members) = msg.kind {
                self.neighbour_lists
                    .push(CandidateList::from_members(msg.sender, &members));
            }
        }
        self.neighbour_lists
            .sort_unstable_by_key(CandidateList::owner);
        let view: Vec<NeighbourInfo<'_>> = self
            .neighbour_degrees
            .iter()
            .zip(&self.neighbour_lists)
            .map(|(&(id, degree), list)| {
                debug_assert_eq!(id, list.owner());
                NeighbourInfo {
                    id,
                    degree,
                    candidates: list,
                }
            })
            .collect();
        let own = self.candidates.as_ref().expect("degree round completed");
        self.preferred = Some(choose_preferred(self.id, self.degree(), own, &view, params));
    }
}

/// What the message bus observed during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BusAudit {
    /// Messages delivered in each round.
    pub messages_per_round: Vec<usize>,
    /// Messages addressed to a vertex that is not a neighbour of the sender.
    pub non_neighbour_messages: usize,
}

impl BusAudit {
    pub fn rounds(&self) -> usize {
        self.messages_per_round.len()
    }

    pub fn total_messages(&self) -> usize {
        self.messages_per_round.iter().sum()
    }
}

#[derive(Debug)]
pub struct Rounds {
    pub assignment: Assignment,
    pub audit: BusAudit,
}

struct Bus<'g> {
    graph: &'g Graph,
    audit: BusAudit,
}

impl Bus<'_> {
    /// Delivers one round of mail in `(receiver, sender)` order.
    fn deliver(&mut self, mut mail: Vec<(VertexId, Message)>, actors: &mut [VertexActor]) {
        mail.sort_unstable_by_key(|(to, msg)| (*to, msg.sender));
        self.audit.messages_per_round.push(mail.len());
        for (to, msg) in mail {
            if !self.graph.has_edge(msg.sender, to) {
                self.audit.non_neighbour_messages += 1;
                continue;
            }
            actors[to].inbox.push(msg);
        }
    }
}

fn collect_mail(
    actors: &mut [VertexActor],
    parallel: bool,
    send: impl Fn(&mut VertexActor) -> Vec<(VertexId, Message)> + Sync + Send,
) -> Vec<(VertexId, Message)> {
    if parallel {
        actors.par_iter_mut().flat_map_iter(send).collect()
    } else {
        actors.iter_mut().flat_map(send).collect()
    }
}

fn process(
    actors: &mut [VertexActor],
    parallel: bool,
    step: impl Fn(&mut VertexActor) + Sync + Send,
) {
    if parallel {
        actors.par_iter_mut().for_each(step);
    } else {
        actors.iter_mut().for_each(step);
    }
}

/// Runs the degree and list announcement rounds and returns every actor's
/// preferred neighbour together with the bus audit.
pub fn run_rounds(
    graph: &Graph,
    params: &DetectionParams,
    workers: usize,
) -> Result<Rounds, ParamError> {
    params.validate()?;
    let run = || {
        let parallel = workers > 1;
        let mut actors: Vec<VertexActor> = graph
            .vertices()
            .map(|v| VertexActor::new(v, graph.neighbours(v).to_vec()))
            .collect();
        let mut bus = Bus {
            graph,
            audit: BusAudit::default(),
        };

        let mail = collect_mail(&mut actors, parallel, VertexActor::announce_degree);
        bus.deliver(mail, &mut actors);
        process(&mut actors, parallel, |a| a.receive_degrees(params));

        let mail = collect_mail(&mut actors, parallel, VertexActor::announce_list);
        bus.deliver(mail, &mut actors);
        process(&mut actors, parallel, |a| a.receive_lists(params));

        let assignment = actors
            .iter()
            .map(|a| a.preferred.expect("list round completed"))
            .collect();
        Rounds {
            assignment,
            audit: bus.audit,
        }
    };
    Ok(if workers > 1 {
        with_pool(workers, run)
    } else {
        run()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{detect, Provenance};

    #[test]
    fn star_leaves_choose_center() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let r = run_rounds(&g, &DetectionParams::default(), 1).unwrap();
        for leaf in 1..5 {
            assert_eq!(r.assignment.preferred(leaf), 0);
            assert_eq!(r.assignment.provenance(leaf), Provenance::DegreeFallback);
        }
        assert_eq!(r.audit.messages_per_round, vec![8, 8]);
        assert_eq!(r.audit.non_neighbour_messages, 0);
    }

    #[test]
    fn triangle_matches_pipeline() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        for seed in 0..5 {
            let params = DetectionParams::default().with_seed(seed);
            let r = run_rounds(&g, &params, 1).unwrap();
            assert_eq!(r.assignment, detect(&g, &params).unwrap().assignment);
        }
    }
}
