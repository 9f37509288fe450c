/** Four-adjective Likert form. Submission stays disabled until every item is
 * answered, so the client can never produce a partial or out-of-range rating. */

import { ADJECTIVES, Adjective, LIKERT_LABELS, LIKERT_VALUES, LikertValue,
         RatingValues } from "./types";

export class RatingForm {
  readonly element: HTMLElement;
  private readonly submitButton: HTMLButtonElement;
  private readonly answers = new Map<Adjective, LikertValue>();
  private submitted = false;

  constructor(private readonly onSubmit: (values: RatingValues) => void,
              doc: Document = document) {
    this.element = doc.createElement("form");
    this.element.className = "rating-form";
    const prompt = doc.createElement("p");
    prompt.textContent = "I found the character to be…";
    this.element.appendChild(prompt);

    for (const adjective of ADJECTIVES) {
      const fieldset = doc.createElement("fieldset");
      fieldset.dataset.adjective = adjective;
      const legend = doc.createElement("legend");
      legend.textContent = adjective;
      fieldset.appendChild(legend);
      for (const value of LIKERT_VALUES) {
        const label = doc.createElement("label");
        label.title = LIKERT_LABELS[value];
        const input = doc.createElement("input") as HTMLInputElement;
        input.type = "radio";
        input.name = adjective;
        input.value = String(value);
        input.addEventListener("change", () => {
          this.answers.set(adjective, value);
          this.refresh();
        });
        label.appendChild(input);
        const span = doc.createElement("span");
        span.textContent = String(value);
        label.appendChild(span);
        fieldset.appendChild(label);
      }
      this.element.appendChild(fieldset);
    }

    this.submitButton = doc.createElement("button") as HTMLButtonElement;
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Submit rating";
    this.submitButton.disabled = true;
    this.element.appendChild(this.submitButton);

    this.element.addEventListener("submit", (event) => {
      event.preventDefault();
      if (!this.isComplete() || this.submitted) return;
      this.submitted = true;
      this.submitButton.disabled = true;
      this.onSubmit(this.values());
    });
  }

  isComplete(): boolean {
    return ADJECTIVES.every((adjective) => this.answers.has(adjective));
  }

  values(): RatingValues {
    if (!this.isComplete()) {
      throw new Error("form is incomplete");
    }
    const out = {} as RatingValues;
    for (const adjective of ADJECTIVES) {
      out[adjective] = this.answers.get(adjective)!;
    }
    return out;
  }

  private refresh(): void {
    this.submitButton.disabled = !this.isComplete() || this.submitted;
  }
}
