/** The proof assistant frontend.
 *
 * Every piece of rendered state comes from the server's state view: the
 * rule panel shows exactly the reported applicable rules, goals arrive
 * surface-printed (named variables only), and all rule checking happens on
 * the server.  The UI's own state is limited to builders for parameter
 * entry, the theme flag, and the id of the loaded exercise.
 */

import {
  ApiClient,
  ExerciseInfo,
  FeedbackJson,
  RequestFailed,
  StateView,
} from "./api.js";
import { FormulaBuilder, TermBuilder, FORMULA_CHOICES, validName } from "./builder.js";

interface ParamFieldSpec {
  key: string;
  label: string;
  type: "formula" | "term" | "name" | "quantified-uni" | "quantified-exi";
}

/** Which input each parameterised rule needs; pure form metadata. */
const RULE_PARAMS: Record<string, ParamFieldSpec[]> = {
  Assume: [],
  Boole: [],
  Imp_I: [],
  Con_I: [],
  Dis_I1: [],
  Dis_I2: [],
  Imp_E: [{ key: "cut", label: "cut formula", type: "formula" }],
  Dis_E: [
    { key: "left", label: "left disjunct", type: "formula" },
    { key: "right", label: "right disjunct", type: "formula" },
  ],
  Con_E1: [{ key: "other", label: "right conjunct", type: "formula" }],
  Con_E2: [{ key: "other", label: "left conjunct", type: "formula" }],
  Exi_I: [{ key: "witness", label: "witness term", type: "term" }],
  Uni_E: [
    { key: "body", label: "universal formula", type: "quantified-uni" },
    { key: "witness", label: "witness term", type: "term" },
  ],
  Exi_E: [
    { key: "body", label: "existential formula", type: "quantified-exi" },
    { key: "fresh", label: "fresh constant", type: "name" },
  ],
  Uni_I: [{ key: "fresh", label: "fresh constant", type: "name" }],
};

type FieldState =
  | { spec: ParamFieldSpec; kind: "formula"; builder: FormulaBuilder }
  | { spec: ParamFieldSpec; kind: "term"; builder: TermBuilder }
  | { spec: ParamFieldSpec; kind: "name"; value: string };

interface ParamForm {
  rule: string;
  fields: FieldState[];
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class ProofApp {
  readonly api: ApiClient;
  private readonly root: HTMLElement;
  private pending: Promise<void> = Promise.resolve();

  view: StateView | null = null;
  exerciseList: ExerciseInfo[] = [];
  loadedExercise: ExerciseInfo | null = null;
  feedback: FeedbackJson[] | null = null;
  certificate: string | null = null;
  message = "";
  dark = false;

  private newFormula = new FormulaBuilder();
  private atomName = "A";
  private atomArity = 0;
  private paramForm: ParamForm | null = null;

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
    this.render();
    this.run(async () => {
      this.exerciseList = (await this.api.exercises()).exercises;
    });
  }

  /** Settles when every queued interaction has finished rendering. */
  whenIdle(): Promise<void> {
    return this.pending;
  }

  private run(action: () => Promise<void>): void {
    this.pending = this.pending
      .then(async () => {
        this.message = "";
        try {
          await action();
        } catch (error) {
          if (error instanceof RequestFailed) {
            const extra =
              error.payload.offset !== undefined
                ? ` (at offset ${error.payload.offset})`
                : "";
            this.message = `${error.payload.error}: ${error.payload.detail}${extra}`;
          } else {
            this.message = String(error);
          }
        }
        this.render();
      })
      .catch(() => undefined);
  }

  // -- actions ------------------------------------------------------------

  startFromBuilder(): void {
    const text = this.newFormula.render();
    this.run(async () => {
      const created = await this.api.createSession({ formula: text });
      this.view = created.view;
      this.loadedExercise = null;
      this.feedback = null;
      this.certificate = null;
      this.newFormula.reset();
      this.paramForm = null;
    });
  }

  loadExercise(info: ExerciseInfo): void {
    this.run(async () => {
      const created = await this.api.createSession({ exercise: info.id });
      this.view = created.view;
      this.loadedExercise = info;
      this.feedback = null;
      this.certificate = null;
      this.paramForm = null;
    });
  }

  clickRule(rule: string): void {
    const specs = RULE_PARAMS[rule] ?? [];
    if (specs.length === 0) {
      this.run(async () => {
        if (!this.view) return;
        this.view = await this.api.apply(this.view.session, rule, {});
        this.feedback = null;
        this.paramForm = null;
      });
      return;
    }
    this.paramForm = {
      rule,
      fields: specs.map((spec) => this.makeField(spec)),
    };
    this.render();
  }

  private makeField(spec: ParamFieldSpec): FieldState {
    if (spec.type === "name") {
      return { spec, kind: "name", value: this.view?.fresh_suggestion ?? "c" };
    }
    if (spec.type === "term") {
      return { spec, kind: "term", builder: new TermBuilder() };
    }
    const builder = new FormulaBuilder();
    if (spec.type === "quantified-uni") builder.fill("uni");
    if (spec.type === "quantified-exi") builder.fill("exi");
    return { spec, kind: "formula", builder };
  }

  submitParams(): void {
    const form = this.paramForm;
    if (!form || !this.paramsComplete()) return;
    const params: Record<string, string> = {};
    for (const field of form.fields) {
      params[field.spec.key] =
        field.kind === "name" ? field.value : field.builder.render();
    }
    this.run(async () => {
      if (!this.view) return;
      this.view = await this.api.apply(this.view.session, form.rule, params);
      this.feedback = null;
      this.paramForm = null;
    });
  }

  paramsComplete(): boolean {
    const form = this.paramForm;
    if (!form) return false;
    return form.fields.every((field) =>
      field.kind === "name" ? validName(field.value) : field.builder.complete(),
    );
  }

  undo(): void {
    this.run(async () => {
      if (!this.view) return;
      this.view = await this.api.undo(this.view.session);
      this.feedback = null;
      this.certificate = null;
      this.paramForm = null;
    });
  }

  revealNext(): void {
    this.run(async () => {
      if (!this.view || !this.loadedExercise) return;
      const next = this.view.step - 1; // applied-so-far in the trimmed view
      const prefix = await this.api.reveal(this.loadedExercise.id, next + 1);
      const step = prefix.steps[next];
      if (!step) {
        this.message = "the solution has no further steps";
        return;
      }
      this.view = await this.api.apply(
        this.view.session,
        step.rule,
        step.params as Record<string, string>,
      );
      this.feedback = null;
      this.paramForm = null;
    });
  }

  requestFeedback(): void {
    this.run(async () => {
      if (!this.view) return;
      this.feedback = (await this.api.hint(this.view.session)).feedback;
    });
  }

  fetchCertificate(): void {
    this.run(async () => {
      if (!this.view) return;
      this.certificate = await this.api.certificate(this.view.session);
    });
  }

  toggleTheme(): void {
    this.dark = !this.dark;
    this.render();
  }

  // -- rendering ----------------------------------------------------------

  render(): void {
    this.root.textContent = "";
    this.root.className = this.dark ? "app dark" : "app";

    const header = el("header");
    header.append(el("h1", {}, "Natural Deduction Assistant"));
    const theme = el(
      "button",
      { "data-action": "theme", title: "toggle dark theme" },
      this.dark ? "light theme" : "dark theme",
    );
    theme.addEventListener("click", () => this.toggleTheme());
    header.append(theme);
    this.root.append(header);

    const layout = el("div", { class: "layout" });
    layout.append(this.renderSidebar());
    layout.append(this.renderMain());
    this.root.append(layout);
  }

  private renderSidebar(): HTMLElement {
    const aside = el("aside");

    const starter = el("section", { class: "starter" });
    starter.append(el("h2", {}, "New proof"));
    starter.append(
      el("div", { class: "built", "data-role": "built-formula" }, this.newFormula.render()),
    );
    const choices = el("div", { class: "choices" });
    for (const entry of FORMULA_CHOICES) {
      const button = el("button", { "data-choice": entry.slug }, entry.label);
      button.addEventListener("click", () => {
        this.newFormula.fill(entry.choice);
        this.render();
      });
      choices.append(button);
    }
    const nameInput = el("input", {
      "data-role": "atom-name",
      value: this.atomName,
      size: "4",
    });
    nameInput.addEventListener("input", () => {
      this.atomName = nameInput.value;
    });
    const arityInput = el("input", {
      "data-role": "atom-arity",
      type: "number",
      min: "0",
      max: "3",
      value: String(this.atomArity),
      size: "2",
    });
    arityInput.addEventListener("input", () => {
      this.atomArity = Number(arityInput.value);
    });
    const atomButton = el("button", { "data-choice": "atom" }, "predicate");
    atomButton.addEventListener("click", () => {
      this.newFormula.fill("atom", { name: this.atomName, arity: this.atomArity });
      this.render();
    });
    const scope = this.newFormula.scopeAtFirstHole();
    choices.append(nameInput, arityInput, atomButton);
    starter.append(choices);
    if (this.newFormula.termHoles().length > 0) {
      const termRow = el("div", { class: "choices" });
      for (const variable of scope) {
        const button = el("button", { "data-termvar": variable }, variable);
        button.addEventListener("click", () => {
          this.newFormula.fillTerm({ variable });
          this.render();
        });
        termRow.append(button);
      }
      const constButton = el("button", { "data-choice": "term-name" }, "name/fun");
      constButton.addEventListener("click", () => {
        this.newFormula.fillTerm({ name: this.atomName, arity: this.atomArity });
        this.render();
      });
      termRow.append(constButton);
      starter.append(termRow);
    }
    const begin = el("button", { "data-action": "start" }, "start proof");
    if (!this.newFormula.complete()) begin.setAttribute("disabled", "");
    begin.addEventListener("click", () => this.startFromBuilder());
    starter.append(begin);
    aside.append(starter);

    const list = el("section", { class: "exercises" });
    list.append(el("h2", {}, "Exercises"));
    for (const info of this.exerciseList) {
      const item = el("button", { "data-exercise": info.id, class: "exercise" });
      item.append(el("span", { class: "exercise-id" }, info.title));
      item.append(el("span", { class: "exercise-formula" }, info.formula));
      item.addEventListener("click", () => this.loadExercise(info));
      list.append(item);
    }
    aside.append(list);
    return aside;
  }

  private renderMain(): HTMLElement {
    const main = el("main");
    const view = this.view;
    if (!view) {
      main.append(el("p", { class: "placeholder" }, "Build a formula or load an exercise."));
      if (this.message) main.append(el("p", { class: "message", "data-role": "message" }, this.message));
      return main;
    }

    const proof = el("section", { class: "proof" });
    const status = el("div", { class: "status" });
    status.append(el("span", { "data-role": "step" }, `step ${view.step}`));
    if (view.exercise) status.append(el("span", { class: "tag" }, view.exercise));
    proof.append(status);

    if (view.completed) {
      proof.append(el("p", { class: "done", "data-role": "completed" }, "Proof complete."));
    } else {
      const lines = el("ol", { class: "goals" });
      view.goals.forEach((goal, index) => {
        const line = el(
          "li",
          index === 0 ? { class: "goal current", "data-goal": String(index) } : { class: "goal", "data-goal": String(index) },
        );
        const sequent =
          goal.assumptions.length > 0
            ? `${goal.assumptions.join(", ")}  ⊢  ${goal.conclusion}`
            : `⊢  ${goal.conclusion}`;
        line.textContent = sequent;
        if (this.feedback && this.feedback[index]) {
          const fb = this.feedback[index]!;
          const label =
            fb.status === "provable"
              ? `provable (${fb.steps} steps)`
              : fb.status === "refuted"
                ? "refuted (countermodel found)"
                : "unknown";
          line.append(el("span", { class: `badge ${fb.status}`, "data-feedback": fb.status }, label));
        }
        lines.append(line);
      });
      proof.append(lines);
    }

    const controls = el("div", { class: "controls" });
    const undoButton = el("button", { "data-action": "undo" }, "Undo");
    if (view.step <= 1) undoButton.setAttribute("disabled", "");
    undoButton.addEventListener("click", () => this.undo());
    controls.append(undoButton);

    if (this.loadedExercise && this.loadedExercise.policy !== "withheld" && !view.completed) {
      const revealButton = el("button", { "data-action": "reveal" }, "Reveal next step");
      revealButton.addEventListener("click", () => this.revealNext());
      controls.append(revealButton);
    }
    if (!view.completed) {
      const feedbackButton = el("button", { "data-action": "feedback" }, "Provability feedback");
      feedbackButton.addEventListener("click", () => this.requestFeedback());
      controls.append(feedbackButton);
    }
    if (view.completed) {
      const certButton = el("button", { "data-action": "certificate" }, "Certificate");
      certButton.addEventListener("click", () => this.fetchCertificate());
      controls.append(certButton);
    }
    proof.append(controls);
    main.append(proof);

    if (!view.completed) {
      const rules = el("section", { class: "rules" });
      rules.append(el("h2", {}, "Applicable rules"));
      const panel = el("div", { class: "rule-buttons", "data-role": "rule-panel" });
      for (const rule of view.applicable_rules) {
        const button = el("button", { "data-rule": rule }, rule);
        button.addEventListener("click", () => this.clickRule(rule));
        panel.append(button);
      }
      rules.append(panel);
      main.append(rules);
      if (this.paramForm) main.append(this.renderParamForm(this.paramForm));
    }

    if (this.certificate) {
      const block = el("pre", { class: "certificate", "data-role": "certificate" });
      block.textContent = this.certificate;
      main.append(block);
    }
    if (this.message) {
      main.append(el("p", { class: "message", "data-role": "message" }, this.message));
    }
    return main;
  }

  private renderParamForm(form: ParamForm): HTMLElement {
    const section = el("section", { class: "params", "data-role": "param-form" });
    section.append(el("h2", {}, `${form.rule} parameters`));
    form.fields.forEach((field, fieldIndex) => {
      const row = el("div", { class: "param", "data-param": field.spec.key });
      row.append(el("label", {}, field.spec.label));
      if (field.kind === "name") {
        const input = el("input", {
          value: field.value,
          "data-role": `param-name-${field.spec.key}`,
        });
        input.addEventListener("input", () => {
          field.value = input.value;
          this.renderSubmitState();
        });
        row.append(input);
      } else if (field.kind === "term") {
        row.append(el("span", { class: "built" }, field.builder.render()));
        const buttons = el("div", { class: "choices" });
        const make = (label: string, entry: { name: string; arity?: number }) => {
          const button = el(
            "button",
            { "data-term": `${fieldIndex}:${label}` },
            label,
          );
          button.addEventListener("click", () => {
            field.builder.fill(entry);
            this.render();
          });
          buttons.append(button);
        };
        const suggestion = this.view?.fresh_suggestion ?? "c";
        make(suggestion, { name: suggestion });
        make("c", { name: "c" });
        make("f(_)", { name: "f", arity: 1 });
        const nameInput = el("input", { size: "4", "data-role": `term-name-${fieldIndex}` });
        const nameButton = el("button", { "data-term": `${fieldIndex}:custom` }, "use name");
        nameButton.addEventListener("click", () => {
          if (nameInput.value) field.builder.fill({ name: nameInput.value });
          this.render();
        });
        buttons.append(nameInput, nameButton);
        row.append(buttons);
      } else {
        row.append(
          el(
            "span",
            { class: "built", "data-role": `param-built-${field.spec.key}` },
            field.builder.render(),
          ),
        );
        const buttons = el("div", { class: "choices" });
        for (const entry of FORMULA_CHOICES) {
          const button = el(
            "button",
            { "data-paramchoice": `${fieldIndex}:${entry.slug}` },
            entry.label,
          );
          button.addEventListener("click", () => {
            field.builder.fill(entry.choice);
            this.render();
          });
          buttons.append(button);
        }
        const nameInput = el("input", {
          size: "4",
          value: this.atomName,
          "data-role": `param-atom-name-${fieldIndex}`,
        });
        nameInput.addEventListener("input", () => {
          this.atomName = nameInput.value;
        });
        const arityInput = el("input", {
          type: "number",
          min: "0",
          max: "3",
          value: String(this.atomArity),
          size: "2",
          "data-role": `param-atom-arity-${fieldIndex}`,
        });
        arityInput.addEventListener("input", () => {
          this.atomArity = Number(arityInput.value);
        });
        const atomButton = el("button", { "data-paramchoice": `${fieldIndex}:atom` }, "predicate");
        atomButton.addEventListener("click", () => {
          field.builder.fill("atom", { name: this.atomName, arity: this.atomArity });
          this.render();
        });
        buttons.append(nameInput, arityInput, atomButton);
        if (field.builder.termHoles().length > 0) {
          for (const variable of field.builder.scopeAtFirstHole()) {
            const button = el("button", { "data-paramvar": `${fieldIndex}:${variable}` }, variable);
            button.addEventListener("click", () => {
              field.builder.fillTerm({ variable });
              this.render();
            });
            buttons.append(button);
          }
          const termButton = el("button", { "data-paramchoice": `${fieldIndex}:term-name` }, "name/fun");
          termButton.addEventListener("click", () => {
            field.builder.fillTerm({ name: this.atomName, arity: this.atomArity });
            this.render();
          });
          buttons.append(termButton);
        }
        row.append(buttons);
      }
      section.append(row);
    });
    const submit = el("button", { "data-action": "apply-params" }, `apply ${form.rule}`);
    if (!this.paramsComplete()) submit.setAttribute("disabled", "");
    submit.addEventListener("click", () => this.submitParams());
    const cancel = el("button", { "data-action": "cancel-params" }, "cancel");
    cancel.addEventListener("click", () => {
      this.paramForm = null;
      this.render();
    });
    section.append(submit, cancel);
    return section;
  }

  private renderSubmitState(): void {
    const submit = this.root.querySelector('[data-action="apply-params"]');
    if (!(submit instanceof HTMLButtonElement)) return;
    if (this.paramsComplete()) submit.removeAttribute("disabled");
    else submit.setAttribute("disabled", "");
  }
}
