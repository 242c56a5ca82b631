/** Click-driven construction of formulas and terms.
 *
 * A build tree grows by filling holes, one click per connective, quantifier,
 * predicate or term; only a hole-free tree can be submitted, so no
 * syntactically malformed input can reach the server.  The rendering is
 * fully parenthesised surface text, parsed and index-converted server-side.
 */

export type TermNode =
  | { kind: "thole" }
  | { kind: "var"; name: string }
  | { kind: "fun"; name: string; args: TermNode[] };

export type FormulaNode =
  | { kind: "hole" }
  | { kind: "falsity" }
  | { kind: "pre"; name: string; args: TermNode[] }
  | { kind: "not"; body: FormulaNode }
  | { kind: "imp" | "dis" | "con"; left: FormulaNode; right: FormulaNode }
  | { kind: "uni" | "exi"; variable: string; body: FormulaNode };

/** Hole-filling choices with DOM-safe slugs and display labels. */
export const FORMULA_CHOICES = [
  { slug: "false", label: "False", choice: "False" },
  { slug: "not", label: "~", choice: "~" },
  { slug: "imp", label: "->", choice: "->" },
  { slug: "con", label: "/\\", choice: "/\\" },
  { slug: "dis", label: "\\/", choice: "\\/" },
  { slug: "uni", label: "uni", choice: "uni" },
  { slug: "exi", label: "exi", choice: "exi" },
] as const;

export type FormulaChoice =
  | "False"
  | "~"
  | "->"
  | "/\\"
  | "\\/"
  | "uni"
  | "exi"
  | "atom";

const NAME_RE = /^[A-Za-z][A-Za-z0-9_]*$/;

export function validName(name: string): boolean {
  return NAME_RE.test(name) && !["False", "uni", "exi"].includes(name);
}

function holes(node: FormulaNode): Array<FormulaNode> {
  switch (node.kind) {
    case "hole":
      return [node];
    case "falsity":
    case "pre":
      return [];
    case "not":
      return holes(node.body);
    case "imp":
    case "dis":
    case "con":
      return [...holes(node.left), ...holes(node.right)];
    case "uni":
    case "exi":
      return holes(node.body);
  }
}

function termHoles(node: TermNode): TermNode[] {
  switch (node.kind) {
    case "thole":
      return [node];
    case "var":
      return [];
    case "fun":
      return node.args.flatMap(termHoles);
  }
}

export class FormulaBuilder {
  root: FormulaNode = { kind: "hole" };

  /** Binder names in scope at the first open hole (term holes included). */
  scopeAtFirstHole(): string[] {
    const walk = (node: FormulaNode, env: string[]): string[] | null => {
      switch (node.kind) {
        case "hole":
          return env;
        case "falsity":
          return null;
        case "pre":
          return node.args.some((arg) => termHoles(arg).length > 0) ? env : null;
        case "not":
          return walk(node.body, env);
        case "imp":
        case "dis":
        case "con":
          return walk(node.left, env) ?? walk(node.right, env);
        case "uni":
        case "exi":
          return walk(node.body, [...env, node.variable]);
      }
    };
    return walk(this.root, []) ?? [];
  }

  complete(): boolean {
    return holes(this.root).length === 0 && this.termHoles().length === 0;
  }

  termHoles(): TermNode[] {
    const out: TermNode[] = [];
    const walk = (node: FormulaNode): void => {
      switch (node.kind) {
        case "pre":
          node.args.forEach((a) => out.push(...termHoles(a)));
          return;
        case "not":
          walk(node.body);
          return;
        case "imp":
        case "dis":
        case "con":
          walk(node.left);
          walk(node.right);
          return;
        case "uni":
        case "exi":
          walk(node.body);
          return;
        default:
          return;
      }
    };
    walk(this.root);
    return out;
  }

  /** Fill the first formula hole; returns false when there is none. */
  fill(choice: FormulaChoice, detail?: { name?: string; arity?: number }): boolean {
    const hole = holes(this.root)[0];
    if (!hole) return false;
    const mutable = hole as { kind: string } & Record<string, unknown>;
    switch (choice) {
      case "False":
        mutable.kind = "falsity";
        return true;
      case "~":
        mutable.kind = "not";
        mutable.body = { kind: "hole" };
        return true;
      case "->":
      case "/\\":
      case "\\/": {
        mutable.kind = choice === "->" ? "imp" : choice === "/\\" ? "con" : "dis";
        mutable.left = { kind: "hole" };
        mutable.right = { kind: "hole" };
        return true;
      }
      case "uni":
      case "exi": {
        const name = detail?.name ?? this.freshBinder();
        if (!validName(name)) return false;
        mutable.kind = choice;
        mutable.variable = name;
        mutable.body = { kind: "hole" };
        return true;
      }
      case "atom": {
        const name = detail?.name;
        if (!name || !validName(name)) return false;
        const arity = detail?.arity ?? 0;
        mutable.kind = "pre";
        mutable.name = name;
        mutable.args = Array.from({ length: arity }, () => ({ kind: "thole" }) as TermNode);
        return true;
      }
    }
  }

  /** Fill the first term hole with a variable, constant, or function. */
  fillTerm(entry: { variable?: string; name?: string; arity?: number }): boolean {
    const hole = this.termHoles()[0];
    if (!hole) return false;
    const mutable = hole as { kind: string } & Record<string, unknown>;
    if (entry.variable !== undefined) {
      if (!validName(entry.variable)) return false;
      mutable.kind = "var";
      mutable.name = entry.variable;
      return true;
    }
    if (!entry.name || !validName(entry.name)) return false;
    mutable.kind = "fun";
    mutable.name = entry.name;
    mutable.args = Array.from(
      { length: entry.arity ?? 0 },
      () => ({ kind: "thole" }) as TermNode,
    );
    return true;
  }

  private freshBinder(): string {
    const used = new Set<string>();
    const collect = (node: FormulaNode): void => {
      if (node.kind === "uni" || node.kind === "exi") {
        used.add(node.variable);
        collect(node.body);
      } else if (node.kind === "not") collect(node.body);
      else if (node.kind === "imp" || node.kind === "dis" || node.kind === "con") {
        collect(node.left);
        collect(node.right);
      }
    };
    collect(this.root);
    for (const name of ["x", "y", "z"]) if (!used.has(name)) return name;
    let k = 1;
    while (used.has(`u${k}`)) k += 1;
    return `u${k}`;
  }

  reset(): void {
    this.root = { kind: "hole" };
  }

  /** Fully parenthesised surface text; holes render as ... placeholders. */
  render(): string {
    return renderFormula(this.root);
  }
}

export function renderTerm(node: TermNode): string {
  switch (node.kind) {
    case "thole":
      return "…";
    case "var":
      return node.name;
    case "fun":
      return node.args.length
        ? `${node.name}(${node.args.map(renderTerm).join(", ")})`
        : node.name;
  }
}

export function renderFormula(node: FormulaNode): string {
  switch (node.kind) {
    case "hole":
      return "…";
    case "falsity":
      return "False";
    case "pre":
      return node.args.length
        ? `${node.name}(${node.args.map(renderTerm).join(", ")})`
        : node.name;
    case "not":
      return `~(${renderFormula(node.body)})`;
    case "imp":
      return `(${renderFormula(node.left)} -> ${renderFormula(node.right)})`;
    case "dis":
      return `(${renderFormula(node.left)} \\/ ${renderFormula(node.right)})`;
    case "con":
      return `(${renderFormula(node.left)} /\\ ${renderFormula(node.right)})`;
    case "uni":
      return `uni ${node.variable}. (${renderFormula(node.body)})`;
    case "exi":
      return `exi ${node.variable}. (${renderFormula(node.body)})`;
  }
}

export class TermBuilder {
  root: TermNode = { kind: "thole" };

  complete(): boolean {
    return termHoles(this.root).length === 0;
  }

  fill(entry: { variable?: string; name?: string; arity?: number }): boolean {
    const hole = termHoles(this.root)[0];
    if (!hole) return false;
    const mutable = hole as { kind: string } & Record<string, unknown>;
    if (entry.variable !== undefined) {
      if (!validName(entry.variable)) return false;
      mutable.kind = "var";
      mutable.name = entry.variable;
      return true;
    }
    if (!entry.name || !validName(entry.name)) return false;
    mutable.kind = "fun";
    mutable.name = entry.name;
    mutable.args = Array.from(
      { length: entry.arity ?? 0 },
      () => ({ kind: "thole" }) as TermNode,
    );
    return true;
  }

  reset(): void {
    this.root = { kind: "thole" };
  }

  render(): string {
    return renderTerm(this.root);
  }
}
