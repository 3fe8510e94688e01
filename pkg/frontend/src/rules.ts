/** Static glossary mapping each bot RuleId to a one-line explanation.
 *  Kept in sync with the service's rule vocabulary by the contract tests. */
export const RULE_GLOSSARY: Record<string, string> = {
  WIN: 'completed a winning triplet',
  BLOCK: 'blocked your two-in-a-row',
  'FORK-MAKE': 'created a double threat',
  'FORK-BLOCK': 'neutralized your double-threat setup',
  'RANDOM-FILL': 'no decisive line left: random fill',
  FIRST_RANDOM: 'random opening: centre/corner/edge',
  'C-EDGE': 'took centre after opening a corner against your edge reply',
  'C-CORNER': 'building the corner fork after corner-vs-corner opening',
  'C-CENTRE': 'took the diagonally opposite corner against your centre',
  'E-CORNER': 'took centre, then a free edge, after opening on an edge',
  'E-NEAR-EDGE': 'took the corner between our edge and yours (L fork)',
  'E-OPP-EDGE': 'took a corner by my edge, then the corner closest to yours',
  'E-CENTRE': 'took a corner next to my edge against your centre',
  'M-EDGE': 'from centre, building the open-V corner fork past your edge',
  'M-CORNER': 'from centre, took the corner diagonally opposite yours',
  'O-CORNER': 'took centre against your corner opening',
  'O-CORNER-CORNER': 'took a free edge after your two opposite corners',
  'O-CORNER-EDGE': 'took the corner closest to both your marks',
  'O-EDGE': 'flanked your edge opening, then the centre',
  'O-CENTRE': 'took corners against your centre opening',
};

export const RULE_IDS = new Set(Object.keys(RULE_GLOSSARY));

/** Unknown ids render as themselves so a vocabulary drift stays visible. */
export function describeRule(rule: string): string {
  return RULE_GLOSSARY[rule] ?? rule;
}
