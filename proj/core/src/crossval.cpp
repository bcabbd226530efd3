#include "aisclass/crossval.hpp"

#include <algorithm>
#include <stdexcept>

#include "aisclass/random.hpp"
#include "aisclass/splits.hpp"

namespace aisclass {
namespace {

std::size_t count_synthetic(const LabeledDataset& ds) {
  std::size_t n = 0;
  for (const auto& i : ds.info) n += i.provenance == Provenance::synthetic;
  return n;
}

}  // namespace

TailOutcome run_tail(const LabeledDataset& train, const LabeledDataset& test, const EvalTail& tail) {
  if (count_synthetic(train) != 0) {
    throw std::logic_error("training data already contains synthetic rows before balancing");
  }
  if (count_synthetic(test) != 0) {
    throw std::logic_error("test data contains synthetic rows");
  }
  const LabeledDataset balanced = rebalance(train, tail.balance);
  TailOutcome out{{}, {}, Model::train(tail.classifier, balanced, tail.params)};
  out.train_rows = train.size();
  out.balanced_train_rows = balanced.size();
  out.synthetic_rows = count_synthetic(balanced);
  out.test_rows = test.size();
  const auto predicted = out.model.predict_many(test.rows);
  out.cm = confusion(test.labels, predicted);
  out.metrics = metrics(out.cm, tail.metrics);
  return out;
}

KFoldResult kfold_eval(const LabeledDataset& ds, const EvalTail& tail, std::size_t k,
                       std::uint64_t seed) {
  const auto folds = stratified_folds(ds, k, seed);
  KFoldResult result;
  std::vector<char> in_test(ds.size());
  for (std::size_t f = 0; f < k; ++f) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (std::size_t r : folds[f]) in_test[r] = 1;
    std::vector<std::size_t> train_rows;
    for (std::size_t r = 0; r < ds.size(); ++r) {
      if (!in_test[r]) train_rows.push_back(r);
    }
    const LabeledDataset train = ds.subset(train_rows);
    const LabeledDataset test = ds.subset(folds[f]);

    EvalTail fold_tail = tail;
    fold_tail.balance.seed = derive_seed(tail.balance.seed, f);
    fold_tail.params.svm.seed = derive_seed(tail.params.svm.seed, f);
    const TailOutcome o = run_tail(train, test, fold_tail);

    FoldResult fr;
    fr.fold = f;
    fr.train_rows = o.balanced_train_rows;
    fr.test_rows = test.size();
    fr.synthetic_train_rows = o.synthetic_rows;
    fr.synthetic_test_rows = count_synthetic(test);
    if (fr.synthetic_test_rows != 0) throw std::logic_error("synthetic rows leaked into a test fold");
    fr.cm = o.cm;
    fr.metrics = o.metrics;
    result.mean_accuracy += fr.metrics.accuracy;
    result.mean_f_measure += fr.metrics.f_measure;
    result.folds.push_back(fr);
  }
  result.mean_accuracy /= static_cast<double>(k);
  result.mean_f_measure /= static_cast<double>(k);
  return result;
}

}  // namespace aisclass
